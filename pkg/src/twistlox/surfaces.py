"""Twisted surfaces in Minkowski 3-space.

A profile curve ``(f(y), g(y))`` is rotated at rate ``b`` in its own plane
about an axis at offset ``a`` while the whole plane is rotated by ``x``:

* Type I   -- profile in the timelike xz-plane, Euclidean rotation about z;
* Type II  -- profile in the timelike xz-plane, boost about the x-axis;
* Type III -- profile in the spacelike xy-plane, boost about the y-axis.

Closed forms are the production path.  :func:`partials_numeric` exists
only as an oracle for them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .mink import MVec3, minkowski_dot
from .profile import ProfileExpr, parse_profile

#: Relative tolerance for calling ``det`` or ``g11`` zero.
DEGENERACY_TOL = 1e-10


class Family(enum.Enum):
    TYPE_I = "type1"
    TYPE_II = "type2"
    TYPE_III = "type3"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        aliases = {"i": "type1", "ii": "type2", "iii": "type3",
                   "typei": "type1", "typeii": "type2", "typeiii": "type3",
                   "1": "type1", "2": "type2", "3": "type3"}
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        return cls(aliases.get(key, key))


def _as_profile(e) -> ProfileExpr:
    return e if isinstance(e, ProfileExpr) else parse_profile(str(e))


@dataclass(frozen=True)
class TwistedSurface:
    """Twisted surface of one of the three families.

    ``f`` and ``g`` may be given as source strings; ``fp`` and ``gp`` are
    always derived from them.
    """

    family: Family
    a: float
    b: float
    f: ProfileExpr
    g: ProfileExpr
    fp: ProfileExpr = field(init=False, compare=False)
    gp: ProfileExpr = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "f", _as_profile(self.f))
        object.__setattr__(self, "g", _as_profile(self.g))
        object.__setattr__(self, "fp", self.f.derivative())
        object.__setattr__(self, "gp", self.g.derivative())

    def profile_values(self, y: float) -> tuple[float, float, float, float]:
        """``(f, g, f', g')`` at ``y``."""
        return self.f(y), self.g(y), self.fp(y), self.gp(y)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "a": self.a, "b": self.b,
                "f": str(self.f), "g": str(self.g)}


@dataclass(frozen=True)
class FirstForm:
    g11: float
    g12: float
    g22: float

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12 * self.g12


@dataclass(frozen=True)
class CausalFlags:
    p: int          # +1 spacelike surface, -1 timelike
    r: int          # +1 spacelike meridian, -1 timelike
    degenerate: bool


# -- embedding and partials --------------------------------------------------

def _rotations(S: TwistedSurface, x: float):
    bx = S.b * x
    if S.family is Family.TYPE_III:
        return math.cos(bx), math.sin(bx)
    return math.cosh(bx), math.sinh(bx)


def embed_point(S: TwistedSurface, x: float, y: float) -> MVec3:
    f, g = S.f(y), S.g(y)
    c, s = _rotations(S, x)
    a = S.a
    if S.family is Family.TYPE_I:
        R = a + f * c + g * s
        return MVec3(R * math.cos(x), R * math.sin(x), f * s + g * c)
    if S.family is Family.TYPE_II:
        R = a + f * s + g * c
        return MVec3(f * c + g * s, R * math.sinh(x), R * math.cosh(x))
    R = a + f * c - g * s
    return MVec3(R * math.cosh(x), f * s + g * c, R * math.sinh(x))


def _partials_core(S: TwistedSurface, x, vals, lib):
    """Closed-form partials as coordinate triples; ``lib`` is math or mpmath."""
    f, g, fp, gp = vals
    a, b = S.a, S.b
    bx = b * x
    if S.family is Family.TYPE_III:
        c, s = lib.cos(bx), lib.sin(bx)
    else:
        c, s = lib.cosh(bx), lib.sinh(bx)
    if S.family is Family.TYPE_I:
        R = a + f * c + g * s
        Z = f * s + g * c
        Rx, Zx = b * Z, b * (R - a)
        Ry, Zy = fp * c + gp * s, fp * s + gp * c
        cx, sx = lib.cos(x), lib.sin(x)
        return ((Rx * cx - R * sx, Rx * sx + R * cx, Zx),
                (Ry * cx, Ry * sx, Zy))
    ch, sh = lib.cosh(x), lib.sinh(x)
    if S.family is Family.TYPE_II:
        R = a + f * s + g * c
        F = f * c + g * s
        Rx, Fx = b * F, b * (R - a)
        Ry, Fy = fp * s + gp * c, fp * c + gp * s
        return ((Fx, Rx * sh + R * ch, Rx * ch + R * sh),
                (Fy, Ry * sh, Ry * ch))
    R = a + f * c - g * s
    W = f * s + g * c
    Rx, Wx = -b * W, b * (R - a)
    Ry, Wy = fp * c - gp * s, fp * s + gp * c
    return ((Rx * ch + R * sh, Wx, Rx * sh + R * ch),
            (Ry * ch, Wy, Ry * sh))


def partials(S: TwistedSurface, x: float, y: float) -> tuple[MVec3, MVec3]:
    """Closed-form ``(Omega_x, Omega_y)``."""
    ox, oy = _partials_core(S, x, S.profile_values(y), math)
    return MVec3(*ox), MVec3(*oy)


def partials_mp(S: TwistedSurface, x: float, y: float, dps: int = 40):
    """Closed-form partials evaluated with mpmath at ``dps`` digits.

    Returns two coordinate triples of ``mpf``.
    """
    import mpmath
    with mpmath.workdps(dps):
        ym, xm = mpmath.mpf(y), mpmath.mpf(x)
        vals = tuple(e.evaluate_mp(ym) for e in (S.f, S.g, S.fp, S.gp))
        return _partials_core(S, xm, vals, mpmath)


def partials_numeric(S: TwistedSurface, x: float, y: float,
                     h: float = 1e-6) -> tuple[MVec3, MVec3]:
    """Central-difference partials of :func:`embed_point` (test oracle)."""
    if not h > 0:
        raise ValueError("h must be positive")
    dx = (embed_point(S, x + h, y) - embed_point(S, x - h, y)) * (0.5 / h)
    dy = (embed_point(S, x, y + h) - embed_point(S, x, y - h)) * (0.5 / h)
    return dx, dy


# -- first fundamental form --------------------------------------------------

def first_form(S: TwistedSurface, x: float, y: float) -> FirstForm:
    f, g, fp, gp = S.profile_values(y)
    a, b = S.a, S.b
    bx = b * x
    if S.family is Family.TYPE_I:
        c2, c, s = math.cosh(2 * bx), math.cosh(bx), math.sinh(bx)
        g11 = 0.5 * (2 * a * a + (1 - 2 * b * b + c2) * f * f
                     + (2 * b * b - 1 + c2) * g * g
                     + 4 * a * g * s + 4 * f * c * (a + g * s))
        return FirstForm(g11, b * (fp * g - f * gp), fp * fp - gp * gp)
    if S.family is Family.TYPE_II:
        c2, c, s = math.cosh(2 * bx), math.cosh(bx), math.sinh(bx)
        g11 = 0.5 * (2 * a * a + (-1 - 2 * b * b + c2) * f * f
                     + (1 + 2 * b * b + c2) * g * g
                     + 4 * a * g * c + 4 * f * s * (a + g * c))
        return FirstForm(g11, b * (fp * g - f * gp), fp * fp - gp * gp)
    R = a + f * math.cos(bx) - g * math.sin(bx)
    g11 = b * b * (f * f + g * g) - R * R
    return FirstForm(g11, b * (f * gp - fp * g), fp * fp + gp * gp)


def first_form_type3_uncorrected(S: TwistedSurface, x: float, y: float) -> FirstForm:
    """Type III coefficients with an uncorrected g11 expression.

    The expression carries ``g*cosh(bx)`` where the parametrization gives
    ``g*sin(bx)``, so it exceeds the true value by
    ``2 f g cos(bx) (cosh(bx) - sin(bx))`` and agrees with :func:`first_form`
    only where ``f*g*cos(bx) = 0``.  Kept for discrepancy reports.
    """
    if S.family is not Family.TYPE_III:
        raise ValueError("the uncorrected variant exists for Type III only")
    f, g, fp, gp = S.profile_values(y)
    a, b = S.a, S.b
    bx = b * x
    c2 = math.cos(2 * bx)
    g11 = 0.5 * (-2 * a * a - (1 - 2 * b * b + c2) * f * f
                 + (2 * b * b - 1 + c2) * g * g
                 + 4 * a * g * math.sin(bx)
                 + 4 * f * math.cos(bx) * (-a + g * math.cosh(bx)))
    return FirstForm(g11, b * (f * gp - fp * g), fp * fp + gp * gp)


def first_form_numeric(S: TwistedSurface, x: float, y: float,
                       h: float = 1e-5) -> FirstForm:
    dx, dy = partials_numeric(S, x, y, h)
    return FirstForm(minkowski_dot(dx, dx), minkowski_dot(dx, dy),
                     minkowski_dot(dy, dy))


def causal_flags(F: FirstForm, tol: float = DEGENERACY_TOL) -> CausalFlags:
    """Surface flag ``p`` from ``sign(det)``, meridian flag ``r`` from ``sign(g11)``.

    Meridians are the curves ``y = const`` with tangent ``Omega_x``, so their
    causal type is that of ``g11``.  ``det`` is judged against the larger of
    its two terms, which keeps the test independent of how x and y are scaled.
    """
    scale = max(abs(F.g11), abs(F.g12), abs(F.g22))
    det = F.det
    p = 1 if det > 0 else -1
    r = 1 if F.g11 > 0 else -1
    det_scale = max(abs(F.g11 * F.g22), F.g12 * F.g12)
    degenerate = scale == 0.0 or abs(det) <= tol * det_scale \
        or abs(F.g11) <= tol * scale
    return CausalFlags(p, r, degenerate)
