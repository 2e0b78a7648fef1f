"""Seven worked loxodromes, stored as data, and a harness that reruns them.

Each entry fixes the surface, the angle, the declared loxodrome type ``q``,
the branch and an anchor ``(x_anchor, y0)``.  No initial values come with the
reference data, so the anchor sits at an endpoint of the reference y-range (or
at the symmetry point of a closed-form solution).  ``reference`` holds the
expected y-range and arc length; ``asserted`` marks the examples checked
quantitatively in the acceptance suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .export import (RunManifest, mesh_manifest, meridian_rows, curve_csv,
                     surface_mesh, trace_results, write_curve_csv, write_obj)
from .loxodrome import LoxodromeSpec
from .solver import CurveTrace, IntegrationConfig, angle_deviation, integrate_loxodrome
from .surfaces import TwistedSurface

EXAMPLES = {
    1: dict(surface=dict(family="type1", a=1, b=0, f="cosh(y)", g="sinh(y)"),
            theta=1.0, q=1, branch=-1, x=(-1.0, 1.0), anchor=(0.0, 0.0),
            meridian_y=1.0, reference=dict(y_range=(-2.0, 2.0), arc_length=3.40367),
            asserted=True,
            note="closed form y = -2 artanh(x tanh theta); anchored at the origin"),
    2: dict(surface=dict(family="type1", a=0, b=1, f="0", g="y"),
            theta=10.0, q=-1, branch=-1, x=(-2.0, 2.0), anchor=(-2.0, 0.0265996),
            meridian_y=20.0, reference=dict(y_range=(0.0265996, 37.5946), arc_length=0.00341117),
            asserted=False,
            note="meridian is spacelike (r=+1), so the timelike loxodrome uses the "
                 "p=-1, q=-1, r=+1 row; q=+1 differs only at O(exp(-2 theta))"),
    3: dict(surface=dict(family="type1", a=1, b=0, f="0", g="y"),
            theta=10.0, q=-1, branch=-1, x=(-math.pi, math.pi), anchor=(0.0, 0.0),
            meridian_y=1.0, reference=dict(y_range=(-3.14159, 3.14159), arc_length=0.000570512),
            asserted=False,
            note="cylinder; same flag situation as example 2"),
    4: dict(surface=dict(family="type2", a=1, b=0, f="0", g="sinh(y)"),
            theta=5.0, q=1, branch=-1, x=(-1.0, 1.0), anchor=(-1.0, 1.30993),
            meridian_y=0.8, reference=dict(y_range=(-0.596144, 1.30993), arc_length=0.0316714),
            asserted=True,
            note="anchored at the upper end of the reference y-range"),
    5: dict(surface=dict(family="type2", a=0, b=10, f="y", g="0"),
            theta=10.0, q=-1, branch=-1, x=(-0.2, 0.2), anchor=(-0.2, 0.139407),
            meridian_y=4.0, reference=dict(y_range=(-0.139407, 7.17324), arc_length=0.000638671),
            asserted=False,
            note="y = 0 is invariant, so a trace cannot span the reference sign change; "
                 "anchored at +0.139407"),
    6: dict(surface=dict(family="type3", a=0, b=1, f="0", g="y"),
            theta=math.pi / 4, q=1, branch=-1, x=(-math.pi / 3, math.pi / 3),
            anchor=(-math.pi / 3, 0.42062),
            meridian_y=1.0, reference=dict(y_range=(0.42062, 2.37744), arc_length=2.76737),
            asserted=True,
            note="g11 = y^2 cos^2 x > 0 on the range: spacelike surface throughout"),
    7: dict(surface=dict(family="type3", a=1, b=0, f="cosh(y)", g="1"),
            theta=1.0, q=1, branch=-1, x=(-1.01, -0.1), anchor=(-1.01, -0.732672),
            meridian_y=-2.0, reference=dict(y_range=(-2.56413, -0.732672), arc_length=3.40392),
            asserted=True,
            note="anchored at the upper end of the reference y-range"),
}


def example_run(n: int, **config_overrides) -> RunManifest:
    ex = EXAMPLES[n]
    x_anchor, y0 = ex["anchor"]
    x_start, x_end = ex["x"]
    cfg = dict(x_start=x_start, x_end=x_end, y0=y0,
               x_anchor=None if x_anchor == x_start else x_anchor)
    cfg.update(config_overrides)
    return RunManifest(
        surface=TwistedSurface(**ex["surface"]),
        spec=LoxodromeSpec(ex["theta"], ex["q"], ex["branch"]),
        config=IntegrationConfig(**cfg),
    )


@dataclass
class ExampleResult:
    n: int
    manifest: RunManifest
    trace: CurveTrace
    max_angle_dev: float | None

    @property
    def reference(self) -> dict:
        return EXAMPLES[self.n]["reference"]

    def comparison(self) -> list[tuple[str, float, float, float, float]]:
        """Rows ``(quantity, reference, computed, abs diff, rel diff)``."""
        ref = self.reference
        got = {"y_min": self.trace.y_range[0], "y_max": self.trace.y_range[1],
               "arc_length": self.trace.arc_length}
        want = {"y_min": ref["y_range"][0], "y_max": ref["y_range"][1],
                "arc_length": ref["arc_length"]}
        rows = []
        for key in ("y_min", "y_max", "arc_length"):
            d = got[key] - want[key]
            rel = abs(d) / abs(want[key]) if want[key] else math.inf
            rows.append((key, want[key], got[key], abs(d), rel))
        return rows

    def report(self) -> str:
        ex = EXAMPLES[self.n]
        p, q, r, branch, theta = self.trace.flags_used
        lines = [f"Example {self.n}: {ex['surface']['family']} "
                 f"a={ex['surface']['a']} b={ex['surface']['b']} "
                 f"f={ex['surface']['f']} g={ex['surface']['g']}  theta={theta:.6g}",
                 f"  flags p={p} q={q} r={r} branch={branch}; p observed along trace: "
                 f"{list(self.trace.p_observed)}; terminated: {self.trace.terminated.value}",
                 f"  max angle deviation: {self.max_angle_dev!r}",
                 f"  {'quantity':<11}{'reference':>15}{'computed':>20}{'abs diff':>12}{'rel diff':>12}"]
        for key, want, got, d, rel in self.comparison():
            lines.append(f"  {key:<11}{want:>15.9g}{got:>20.12g}{d:>12.3e}{rel:>12.3e}")
        if not ex["asserted"]:
            lines.append("  (comparison only; not asserted)")
        lines.append(f"  note: {ex['note']}")
        return "\n".join(lines)


def run_example(n: int, **config_overrides) -> ExampleResult:
    if n not in EXAMPLES:
        raise ValueError(f"no example {n}; choose from {sorted(EXAMPLES)}")
    m = example_run(n, **config_overrides)
    trace = integrate_loxodrome(m.surface, m.spec, m.config)
    dev = angle_deviation(trace, m.surface, m.spec) if len(trace.samples) > 1 else None
    m.results = trace_results(trace, dev)
    return ExampleResult(n, m, trace, dev)


def write_example_outputs(result: ExampleResult, out_dir, mesh_n: int = 48) -> list[Path]:
    """Curve, meridian, mesh and manifest files for one example."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ex = EXAMPLES[result.n]
    m, S = result.manifest, result.manifest.surface
    stem = f"example{result.n}"
    curve = write_curve_csv(result.trace, out / f"{stem}_curve.csv")
    meridian = out / f"{stem}_meridian.csv"
    meridian.write_bytes(curve_csv(meridian_rows(S, ex["meridian_y"], *ex["x"])).encode())
    y_lo, y_hi = result.trace.y_range
    pad = 0.1 * (y_hi - y_lo) or 1.0
    y_rng = (min(y_lo - pad, ex["meridian_y"]), max(y_hi + pad, ex["meridian_y"]))
    if S.family.value == "type2" and S.b == 0:
        # keep the mesh clear of the axis a + g(y) = 0
        y_rng = (max(y_rng[0], y_lo - 0.05), y_rng[1])
    verts, faces = surface_mesh(S, ex["x"], y_rng, mesh_n, mesh_n)
    mesh = write_obj(out / f"{stem}_mesh.obj", verts, faces,
                     mesh_manifest(S, ex["x"], y_rng, mesh_n, mesh_n))
    manifest = out / f"{stem}_manifest.json"
    m.outputs = [curve.name, meridian.name, mesh.name]
    manifest.write_text(m.dumps(), encoding="utf-8")
    return [curve, meridian, mesh, manifest]
