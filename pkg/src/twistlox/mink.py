"""Vector algebra in Minkowski 3-space with signature (+, +, -)."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateSpan, LightlikeInput

#: Relative tolerance (against the Euclidean square norm) below which
#: ``<v, v>`` counts as zero.  Rounding noise sits near 1e-16; loxodrome
#: tangents at large angles get within 1e-10 of the null cone while still
#: clearly timelike or spacelike.
LIGHTLIKE_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class MVec3:
    """A 3-vector; the third coordinate is the timelike direction."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)
                and math.isfinite(self.x3)):
            raise ValueError(f"non-finite coordinates: {self.as_tuple()}")

    def __iter__(self):
        return iter((self.x1, self.x2, self.x3))

    def __add__(self, other: MVec3) -> MVec3:
        return MVec3(self.x1 + other.x1, self.x2 + other.x2,
                     self.x3 + other.x3)

    def __sub__(self, other: MVec3) -> MVec3:
        return MVec3(self.x1 - other.x1, self.x2 - other.x2,
                     self.x3 - other.x3)

    def __mul__(self, k: float) -> MVec3:
        return MVec3(k * self.x1, k * self.x2, k * self.x3)

    __rmul__ = __mul__

    def __neg__(self) -> MVec3:
        return MVec3(-self.x1, -self.x2, -self.x3)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def euclidean_sq(self) -> float:
        return self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class AngleCase(enum.Enum):
    """Which of the four Lorentzian angle definitions applies to a pair."""

    SPACELIKE_PLANE = "a1"       # both spacelike, spacelike span: cos
    SPACELIKE_TIMELIKE_PLANE = "a2"  # both spacelike, timelike span: cosh
    MIXED = "a3"                 # one spacelike, one timelike: sinh
    TIMELIKE = "a4"              # both timelike: -cosh


def minkowski_dot(a: MVec3, b: MVec3) -> float:
    return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3


def causal_classify(v: MVec3, tol: float = LIGHTLIKE_TOL) -> CausalClass:
    """Causal character of ``v``; the zero vector is spacelike by convention."""
    e2 = v.euclidean_sq()
    if e2 == 0.0:
        return CausalClass.SPACELIKE
    q = minkowski_dot(v, v)
    if q > tol * e2:
        return CausalClass.SPACELIKE
    if q < -tol * e2:
        return CausalClass.TIMELIKE
    return CausalClass.LIGHTLIKE


def lorentzian_norm(v: MVec3) -> float:
    return math.sqrt(abs(minkowski_dot(v, v)))


def lorentzian_angle(a: MVec3, b: MVec3,
                     tol: float = LIGHTLIKE_TOL) -> tuple[float, AngleCase]:
    """Lorentzian angle between two non-lightlike vectors.

    The case is decided from the causal classes of ``a`` and ``b`` and the
    sign of the Gram determinant ``<a,a><b,b> - <a,b>^2`` (negative means
    the span is a timelike plane). The returned angle is never negative.

    Raises
    ------
    LightlikeInput
        If either vector is lightlike.
    DegenerateSpan
        If the Gram determinant vanishes within tolerance.
    """
    ca, cb = causal_classify(a, tol), causal_classify(b, tol)
    if CausalClass.LIGHTLIKE in (ca, cb):
        raise LightlikeInput(f"lightlike vector in angle pair ({ca.value}, {cb.value})")
    aa, bb, ab = minkowski_dot(a, a), minkowski_dot(b, b), minkowski_dot(a, b)
    gram = aa * bb - ab * ab
    if abs(gram) <= tol * (abs(aa * bb) + ab * ab):
        raise DegenerateSpan(f"degenerate span, Gram determinant {gram:.3e}")
    c = ab / math.sqrt(abs(aa) * abs(bb))

    if ca is CausalClass.SPACELIKE and cb is CausalClass.SPACELIKE:
        if gram > 0:
            return math.acos(min(1.0, max(-1.0, c))), AngleCase.SPACELIKE_PLANE
        return math.acosh(max(1.0, abs(c))), AngleCase.SPACELIKE_TIMELIKE_PLANE
    if ca is CausalClass.TIMELIKE and cb is CausalClass.TIMELIKE:
        # <a,b> = -|a||b| cosh(theta) for a future-directed pair; abs() makes
        # the result independent of time orientation
        return math.acosh(max(1.0, abs(c))), AngleCase.TIMELIKE
    return math.asinh(abs(c)), AngleCase.MIXED
