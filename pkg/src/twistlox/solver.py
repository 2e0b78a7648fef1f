"""Integrate loxodromes on twisted surfaces and check their defining property.

The ODE ``dy/dx = slope(x, y)`` is advanced together with the Lorentzian arc
length ``s`` by an embedded Runge-Kutta 4(5) pair (Dormand-Prince, scipy's
``RK45`` stepper).  The causal flags ``p`` and ``r`` are recomputed at every
right-hand-side evaluation; if the local geometry stops matching the flags
found at the anchor point the run stops instead of switching formulas.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import OdeSolution, RK45

from .errors import (CausalMismatch, DegenerateDenominator, DegenerateSpan,
                     DomainError, InvalidCase, LightlikeInput, LightlikeTangent,
                     UnsupportedCase)
from .loxodrome import LoxodromeSpec, slope_general
from .mink import AngleCase, MVec3, lorentzian_angle, minkowski_dot
from .surfaces import (TwistedSurface, causal_flags, embed_point, first_form,
                       partials, partials_mp)

#: Slopes beyond this magnitude stop the run as DEGENERATE_DENOMINATOR.
SLOPE_LIMIT = 1e8
#: Accepted steps shorter than this (relative to 1 + |x|) mean y blows up in
#: finite x; the run stops as DEGENERATE_DENOMINATOR before the slope overflows.
STALL_STEP = 1e-10


class Termination(enum.Enum):
    COMPLETED = "Completed"
    DEGENERATE_DENOMINATOR = "DegenerateDenominator"
    CAUSAL_MISMATCH = "CausalMismatch"
    DOMAIN_ERROR = "DomainError"
    LEFT_DOMAIN = "LeftDomain"


_TERMINATION_OF = {
    CausalMismatch: Termination.CAUSAL_MISMATCH,
    InvalidCase: Termination.CAUSAL_MISMATCH,
    UnsupportedCase: Termination.CAUSAL_MISMATCH,
    DegenerateDenominator: Termination.DEGENERATE_DENOMINATOR,
    DomainError: Termination.DOMAIN_ERROR,
}


@dataclass(frozen=True)
class IntegrationConfig:
    """Integration range and tolerances.

    ``y0`` is the value at ``x_anchor``, which defaults to ``x_start``.  An
    anchor strictly inside the range is integrated outward in both
    directions.
    """

    x_start: float
    x_end: float
    y0: float
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float | None = None
    max_samples: int = 1001
    x_anchor: float | None = None

    def __post_init__(self):
        for name in ("x_start", "x_end", "y0", "rel_tol", "abs_tol", "max_step", "x_anchor"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, float(v))
        object.__setattr__(self, "max_samples", int(self.max_samples))
        if self.x_start == self.x_end:
            raise ValueError("x_start and x_end must differ")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_samples < 2:
            raise ValueError("max_samples must be at least 2")
        if self.max_step is not None and not self.max_step > 0:
            raise ValueError("max_step must be positive")
        lo, hi = sorted((self.x_start, self.x_end))
        if not lo <= self.anchor <= hi:
            raise ValueError("x_anchor must lie within [x_start, x_end]")

    @property
    def anchor(self) -> float:
        return self.x_start if self.x_anchor is None else self.x_anchor

    @property
    def step_cap(self) -> float:
        if self.max_step is not None:
            return self.max_step
        return abs(self.x_end - self.x_start) / 50

    def to_dict(self) -> dict:
        return {"x_start": self.x_start, "x_end": self.x_end, "y0": self.y0,
                "rel_tol": self.rel_tol, "abs_tol": self.abs_tol,
                "max_step": self.max_step, "max_samples": self.max_samples,
                "x_anchor": self.x_anchor}


@dataclass(frozen=True)
class Sample:
    x: float
    y: float
    point: MVec3
    tangent: MVec3
    angle_dev: float
    s: float
    p: int
    r: int


@dataclass(frozen=True)
class _Leg:
    solution: OdeSolution | None
    x_from: float
    x_to: float         # farthest x reached
    length: float       # arc length accumulated along the leg

    def state(self, x: float) -> tuple[float, float]:
        if self.solution is None:
            return float("nan"), 0.0
        y, s = self.solution(x)
        return float(y), float(s)


@dataclass
class CurveTrace:
    samples: tuple[Sample, ...]
    terminated: Termination
    flags_used: tuple
    message: str = ""
    at_start: bool = False
    _legs: tuple = field(default=(), repr=False)
    _y0: float = field(default=float("nan"), repr=False)

    @property
    def x_range(self) -> tuple[float, float]:
        xs = [smp.x for smp in self.samples]
        return (min(xs), max(xs)) if xs else (math.nan, math.nan)

    @property
    def y_range(self) -> tuple[float, float]:
        ys = [smp.y for smp in self.samples]
        return (min(ys), max(ys)) if ys else (math.nan, math.nan)

    @property
    def arc_length(self) -> float:
        return self.samples[-1].s if self.samples else 0.0

    @property
    def p_observed(self) -> tuple[int, ...]:
        return tuple(sorted({smp.p for smp in self.samples}))

    def y_at(self, x) -> np.ndarray:
        """Dense-output ``y`` at ``x``; NaN outside the integrated range."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.full(x.shape, np.nan)
        for leg in self._legs:
            if leg.solution is None:
                continue
            lo, hi = sorted((leg.x_from, leg.x_to))
            mask = (x >= lo) & (x <= hi)
            if mask.any():
                out[mask] = leg.solution(x[mask])[0]
        if not self._legs and self.samples:
            out[x == self.samples[0].x] = self.samples[0].y
        return out


# -- slope field -------------------------------------------------------------

def _expected_case(p: int, q: int, r: int) -> AngleCase:
    if p == 1:
        return AngleCase.SPACELIKE_PLANE
    if q == 1 and r == 1:
        return AngleCase.SPACELIKE_TIMELIKE_PLANE
    if q == -1 and r == -1:
        return AngleCase.TIMELIKE
    return AngleCase.MIXED


def _local_slope(S: TwistedSurface, spec: LoxodromeSpec, x: float, y: float,
                 p0: int, r0: int) -> tuple[float, float]:
    """Slope and arc-length speed at ``(x, y)`` using the anchor flags."""
    F = first_form(S, x, y)
    flags = causal_flags(F)
    if flags.degenerate:
        raise CausalMismatch(f"degenerate first form at x={x:.6g}, y={y:.6g}")
    if (flags.p, flags.r) != (p0, r0):
        raise CausalMismatch(
            f"causal flags changed to p={flags.p}, r={flags.r} at x={x:.6g}, y={y:.6g}")
    m = slope_general(F, spec, p0, r0)
    if not abs(m) <= SLOPE_LIMIT:
        raise DegenerateDenominator(f"slope {m:.3e} exceeds {SLOPE_LIMIT:g} at x={x:.6g}")
    speed = math.sqrt(abs(F.g11 + 2 * F.g12 * m + F.g22 * m * m))
    return m, speed


def _integrate_leg(S, spec, cfg, x_from, x_to, p0, r0):
    """Advance from the anchor toward ``x_to``; returns (leg, termination, msg)."""
    direction = 1.0 if x_to > x_from else -1.0

    def rhs(x, state):
        y = state[0]
        if not math.isfinite(y):
            raise _LeftDomain(f"y became non-finite at x={x:.6g}")
        m, speed = _local_slope(S, spec, x, y, p0, r0)
        return np.array([m, direction * speed])

    solver = RK45(rhs, x_from, np.array([cfg.y0, 0.0]), x_to,
                  rtol=cfg.rel_tol, atol=cfg.abs_tol, max_step=cfg.step_cap)
    ts, interps = [x_from], []
    term, msg = Termination.COMPLETED, ""
    while solver.status == "running":
        try:
            err = solver.step()
        except _LeftDomain as exc:
            term, msg = Termination.LEFT_DOMAIN, str(exc)
            break
        except tuple(_TERMINATION_OF) as exc:
            term, msg = _TERMINATION_OF[type(exc)], f"{type(exc).__name__}: {exc}"
            break
        if err is not None or solver.status == "failed":
            term, msg = Termination.LEFT_DOMAIN, f"integrator failed: {err}"
            break
        ts.append(solver.t)
        interps.append(solver.dense_output())
        if solver.status == "running" and solver.step_size < STALL_STEP * (1 + abs(solver.t)):
            term, msg = Termination.DEGENERATE_DENOMINATOR, (
                f"step size collapsed to {solver.step_size:.3e} at x={solver.t:.6g}, "
                f"y={solver.y[0]:.6g}: slope blow-up")
            break
    if len(ts) == 1:
        return _Leg(None, x_from, x_from, 0.0), term, msg
    sol = OdeSolution(ts, interps)
    return _Leg(sol, x_from, ts[-1], float(abs(sol(ts[-1])[1]))), term, msg


class _LeftDomain(Exception):
    pass


def embedded_form(S: TwistedSurface, x: float, y: float) -> tuple[float, float, float]:
    """``(g11, g12, g22)`` as inner products of the embedded partials.

    The partials and their products are formed at 40 digits and rounded
    once, so this is independent of the closed-form coefficients used by the
    integrator and carries no cancellation error from the embedding.
    """
    import mpmath
    with mpmath.workdps(40):
        ox, oy = partials_mp(S, x, y)

        def dot(u, v):
            return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
        return float(dot(ox, ox)), float(dot(ox, oy)), float(dot(oy, oy))


def plane_images(g11: float, g12: float, g22: float, m: float) -> tuple[MVec3, MVec3]:
    """Images of ``T = omega_x + m*omega_y`` and ``omega_x`` under an isometry
    of the tangent plane onto a coordinate plane of Minkowski space.

    Inner products are preserved, so Lorentzian angles are unchanged, but the
    images have Euclidean size comparable to their Lorentzian size.  Embedded
    tangents of steep loxodromes can sit within 1e-10 (relative) of the null
    cone, where rounding in the embedded coordinates alone costs ~1e-6 rad.
    """
    if g11 == 0.0:
        raise LightlikeInput("omega_x is lightlike")
    n2 = g22 - g12 * g12 / g11          # square of the second frame vector
    s1 = math.sqrt(abs(g11))
    c1, c2 = s1 * (1.0 + m * g12 / g11), m * math.sqrt(abs(n2))
    if g11 > 0 and n2 > 0:
        return MVec3(c1, c2, 0.0), MVec3(s1, 0.0, 0.0)
    if g11 > 0:
        return MVec3(c1, 0.0, c2), MVec3(s1, 0.0, 0.0)
    if n2 > 0:
        return MVec3(c2, 0.0, c1), MVec3(0.0, 0.0, s1)
    raise DegenerateSpan("tangent plane cannot be negative definite")


def _angle_dev(S: TwistedSurface, x: float, y: float, m: float, theta: float,
               expected: AngleCase) -> float:
    tangent, ox = plane_images(*embedded_form(S, x, y), m)
    measured, case = lorentzian_angle(tangent, ox)
    if case is not expected:
        raise CausalMismatch(f"angle case {case.value} fired, expected {expected.value}")
    return abs(measured - theta)


def _make_sample(S, spec, x, y, s, p0, r0) -> Sample:
    F = first_form(S, x, y)
    flags = causal_flags(F)
    m = slope_general(F, spec, p0, r0)
    ox, oy = partials(S, x, y)
    tangent = ox + m * oy
    dev = math.nan
    if spec.theta > 0:
        try:
            dev = _angle_dev(S, x, y, m, spec.theta, _expected_case(p0, spec.q, r0))
        except (LightlikeInput, DegenerateSpan, CausalMismatch):
            pass
    return Sample(x, y, embed_point(S, x, y), tangent, dev, s, flags.p, flags.r)


def integrate_loxodrome(S: TwistedSurface, spec: LoxodromeSpec,
                        cfg: IntegrationConfig) -> CurveTrace:
    """Integrate the loxodrome through ``(cfg.anchor, cfg.y0)``.

    Failures never raise; they are reported through ``terminated``.
    """
    x0 = cfg.anchor
    flags_used = (None, spec.q, None, spec.branch, spec.theta)
    try:
        fl0 = causal_flags(first_form(S, x0, cfg.y0))
        p0, r0 = fl0.p, fl0.r
        flags_used = (p0, spec.q, r0, spec.branch, spec.theta)
        if fl0.degenerate:
            raise CausalMismatch(f"degenerate first form at the anchor (x={x0:.6g}, y={cfg.y0:.6g})")
        _local_slope(S, spec, x0, cfg.y0, p0, r0)
    except tuple(_TERMINATION_OF) as exc:
        return CurveTrace((), _TERMINATION_OF[type(exc)], flags_used,
                          f"{type(exc).__name__}: {exc}", at_start=True, _y0=cfg.y0)

    # legs toward x_start and toward x_end; either may be empty
    legs, term, msg = [], Termination.COMPLETED, ""
    for target in (cfg.x_start, cfg.x_end):
        if target == x0:
            legs.append(_Leg(None, x0, x0, 0.0))
            continue
        leg, t, m = _integrate_leg(S, spec, cfg, x0, target, p0, r0)
        legs.append(leg)
        if t is not Termination.COMPLETED and term is Termination.COMPLETED:
            term, msg = t, m
    start_leg, end_leg = legs

    def state(x):
        if (x - x0) * (cfg.x_start - x0) > 0:
            y, s = start_leg.state(x)
            return y, start_leg.length - abs(s)
        if x == x0:
            return cfg.y0, start_leg.length
        y, s = end_leg.state(x)
        return y, start_leg.length + abs(s)

    xa, xb = start_leg.x_to, end_leg.x_to
    xs = [x0] if xa == xb else np.linspace(xa, xb, cfg.max_samples)
    samples = []
    for x in xs:
        y, s = state(float(x))
        try:
            samples.append(_make_sample(S, spec, float(x), y, s, p0, r0))
        except (CausalMismatch, DegenerateDenominator, DomainError, InvalidCase, ValueError):
            break
    return CurveTrace(tuple(samples), term, flags_used, msg,
                      _legs=tuple(l for l in legs if l.solution is not None), _y0=cfg.y0)


# -- post-processing ---------------------------------------------------------

def arc_length(trace: CurveTrace) -> float:
    """Total Lorentzian arc length, as carried in the integrator state."""
    if len(trace.samples) < 2:
        raise ValueError("arc length needs at least two samples")
    return trace.samples[-1].s - trace.samples[0].s


def angle_deviation(trace: CurveTrace, S: TwistedSurface,
                    spec: LoxodromeSpec) -> float | None:
    """Largest ``|measured angle - theta|`` against ``Omega_x`` over the samples.

    Returns None when ``theta == 0`` (the curve is a meridian and the angle is
    not defined).  Raises LightlikeTangent if a tangent is lightlike and
    CausalMismatch if the angle case differs from the one implied by the flags.
    """
    if spec.theta == 0:
        return None
    if len(trace.samples) < 2:
        raise ValueError("angle deviation needs at least two samples")
    p, q, r = trace.flags_used[:3]
    expected = _expected_case(p, q, r)
    worst = 0.0
    for i, smp in enumerate(trace.samples):
        F = first_form(S, smp.x, smp.y)
        m = slope_general(F, spec, p, r)
        try:
            dev = _angle_dev(S, smp.x, smp.y, m, spec.theta, expected)
        except LightlikeInput:
            raise LightlikeTangent(f"lightlike tangent at sample {i} (x={smp.x:.6g})", i) from None
        worst = max(worst, dev)
    return worst


def example1_closed_form(x: float, theta: float) -> float:
    """Exact loxodrome ``y = -2 artanh(x tanh(theta))`` on the surface
    ``((1 + cosh y) cos x, (1 + cosh y) sin x, sinh y)`` through the origin."""
    u = x * math.tanh(theta)
    if abs(u) >= 1:
        raise DomainError(f"artanh undefined at {u!r}")
    return -2.0 * math.atanh(u)
