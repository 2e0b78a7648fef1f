"""Slope fields ``dy/dx`` of loxodromes measured against meridians ``y = const``.

Notation: ``p``, ``q``, ``r`` are +1 for a spacelike surface, loxodrome and
meridian respectively and -1 for a timelike one.  The two directions that cut
a meridian at the same angle are selected by ``branch``; ``branch=-1`` takes
the upper sign of every ``-/+`` (``+/-``) in the slope formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (CausalMismatch, DegenerateDenominator, DomainError,
                     InvalidCase, UnsupportedCase)
from .surfaces import Family, FirstForm, TwistedSurface

#: ``|denominator| < DENOM_TOL * |g11 g22|`` counts as degenerate.
DENOM_TOL = 1e-12

# Flag triples (p, q, r) for which the b = 0 formulas hold, per family.
B0_ADMISSIBLE = {
    Family.TYPE_I: ((1, 1, 1), (-1, 1, 1), (-1, -1, 1)),
    Family.TYPE_II: ((1, 1, 1), (-1, 1, 1), (-1, -1, 1)),
    Family.TYPE_III: ((-1, 1, -1), (-1, -1, -1)),
}
B0_EXCLUDED = {
    Family.TYPE_I: ((-1, 1, -1), (-1, -1, -1)),
    Family.TYPE_II: ((-1, 1, -1), (-1, -1, -1)),
    Family.TYPE_III: ((1, 1, 1), (-1, 1, 1), (-1, -1, 1)),
}

# (p, q, r) triples that have a separately derived slope formula
SPECIALIZED_CASES = ((1, 1, 1), (-1, 1, 1), (-1, 1, -1), (-1, -1, -1))


def _sign(v: int, name: str) -> int:
    if v not in (1, -1):
        raise ValueError(f"{name} must be +1 or -1, got {v!r}")
    return int(v)


@dataclass(frozen=True)
class LoxodromeSpec:
    theta: float
    q: int = 1
    branch: int = -1

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        if not (math.isfinite(self.theta) and self.theta >= 0):
            raise ValueError(f"theta must be finite and nonnegative, got {self.theta!r}")
        object.__setattr__(self, "q", _sign(self.q, "q"))
        object.__setattr__(self, "branch", _sign(self.branch, "branch"))

    def to_dict(self) -> dict:
        return {"theta": self.theta, "q": self.q, "branch": self.branch}


@dataclass(frozen=True)
class ABPair:
    A: float
    B: float
    case: str       # 'sin', 'sinh' or 'cosh'
    W: float        # q*r - p*A^2, in closed form: cos^2, cosh^2 or sinh^2


def select_AB(p: int, q: int, r: int, theta: float) -> ABPair:
    """Row of the (A, B) table selected by ``p`` and ``q*r``.

    A spacelike surface carries only spacelike tangents, so ``p=+1``
    requires ``q = r = +1``.
    """
    p, q, r = _sign(p, "p"), _sign(q, "q"), _sign(r, "r")
    if p == 1:
        if q != 1 or r != 1:
            raise InvalidCase(f"spacelike surface admits only spacelike curves, got q={q}, r={r}")
        return ABPair(math.sin(theta), math.sin(2 * theta), "sin", math.cos(theta) ** 2)
    if q * r == 1:
        return ABPair(math.sinh(theta), math.sinh(2 * theta), "sinh", math.cosh(theta) ** 2)
    return ABPair(math.cosh(theta), math.sinh(2 * theta), "cosh", math.sinh(theta) ** 2)


def _finish(num_regular: float, num_radical: float, denom: float,
            F: FirstForm, branch: int) -> float:
    if abs(denom) < DENOM_TOL * abs(F.g11 * F.g22) or denom == 0.0:
        raise DegenerateDenominator(f"slope denominator {denom:.3e} vanishes")
    return (num_regular + branch * num_radical) / denom


def _radicand(value: float, F: FirstForm) -> float:
    if value < 0:
        # allow rounding noise on a null direction, nothing more
        if value >= -1e-14 * max(F.g11 * F.g11, F.g12 * F.g12, abs(F.g11 * F.g22)):
            return 0.0
        raise CausalMismatch(f"negative radicand {value:.3e}: flags inconsistent with the metric")
    return value


def slope_general(F: FirstForm, spec: LoxodromeSpec, p: int, r: int) -> float:
    """Unified slope formula valid for every admissible ``(p, q, r)``."""
    q = spec.q
    ab = select_AB(p, q, r, spec.theta)
    A2 = ab.A * ab.A
    g11, g12, g22 = F.g11, F.g12, F.g22
    rad = math.sqrt(_radicand(p * F.det, F))
    regular = -2 * p * q * r * g11 * g12 * A2
    radical = g11 * rad * ab.B
    # -p A^2 + q r is taken from the table: forming it here cancels badly
    # for small theta (cosh^2 - 1) or theta near pi/2 (1 - sin^2)
    denom = 2 * (g12 * g12 - q * r * g11 * g22 * ab.W)
    return _finish(regular, radical, denom, F, spec.branch)


def slope_case(F: FirstForm, spec: LoxodromeSpec, p: int, r: int) -> float:
    """The four separately derived slope formulas, dispatched on ``(p, q, r)``.

    ``(-1, -1, 1)`` has no formula of its own; use :func:`slope_general`.
    """
    key = (p, spec.q, r)
    if key not in SPECIALIZED_CASES:
        raise UnsupportedCase(f"no specialized formula for (p, q, r) = {key}")
    th = spec.theta
    g11, g12, g22 = F.g11, F.g12, F.g22
    if key == (1, 1, 1):
        rad = math.sqrt(_radicand(g11 * g22 - g12 * g12, F))
        return _finish(-2 * g11 * g12 * math.sin(th) ** 2,
                       g11 * rad * math.sin(2 * th),
                       2 * (g12 * g12 - g11 * g22 * math.cos(th) ** 2), F, spec.branch)
    rad = math.sqrt(_radicand(g12 * g12 - g11 * g22, F))
    radical = g11 * rad * math.sinh(2 * th)
    if key == (-1, 1, -1):
        return _finish(-2 * g11 * g12 * math.cosh(th) ** 2, radical,
                       2 * (g12 * g12 + g11 * g22 * math.sinh(th) ** 2), F, spec.branch)
    # the spacelike/spacelike-meridian and timelike/timelike-meridian cases
    # share one expression
    return _finish(2 * g11 * g12 * math.sinh(th) ** 2, radical,
                   2 * (g12 * g12 - g11 * g22 * math.cosh(th) ** 2), F, spec.branch)


def b0_factor(p: int, q: int, r: int, theta: float) -> float:
    """``A / sqrt(qr - p A^2)``: tan, tanh or coth of ``theta`` by case."""
    ab = select_AB(p, q, r, theta)
    return ab.A / math.sqrt(ab.W)


def check_b0_admissible(family: Family, p: int, q: int, r: int) -> None:
    family = Family.parse(family)
    if (p, q, r) not in B0_ADMISSIBLE[family]:
        raise UnsupportedCase(
            f"(p, q, r) = ({p}, {q}, {r}) is not admissible on a {family.value} "
            f"surface with b = 0; admissible: {list(B0_ADMISSIBLE[family])}, "
            f"excluded by the family: {list(B0_EXCLUDED[family])}")


def slope_b0(S: TwistedSurface, y: float, spec: LoxodromeSpec, p: int, r: int) -> float:
    """Closed-form slope on an untwisted (``b = 0``) surface.

    ``sqrt(p(r f'^2 - g'^2)) / C dy = +/- A / sqrt(qr - p A^2) dx`` with
    ``C = a + f`` (Types I, III) or ``a + g`` (Type II).  The sign is fixed so
    that the result equals :func:`slope_general` for the same ``branch``.
    """
    if S.b != 0:
        raise ValueError("slope_b0 needs an untwisted surface (b = 0)")
    q = spec.q
    check_b0_admissible(S.family, p, q, r)
    f, g, fp, gp = S.profile_values(y)
    C = S.a + (g if S.family is Family.TYPE_II else f)
    if C == 0:
        raise DomainError("C = 0: surface collapses onto the rotation axis")
    rad = p * (r * fp * fp - gp * gp)
    if rad < 0:
        raise CausalMismatch(f"negative radicand {rad:.3e} in b = 0 slope")
    if rad == 0:
        raise DegenerateDenominator("profile speed vanishes; slope undefined")
    sign = -p * q * spec.branch * (1 if C > 0 else -1)
    return sign * b0_factor(p, q, r, spec.theta) * C / math.sqrt(rad)
