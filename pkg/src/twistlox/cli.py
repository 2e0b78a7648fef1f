"""Command-line front end.

Exit codes: 0 success, 2 argument or parse error, 3 geometric infeasibility
at the starting point.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import TwistloxError, UnsupportedCase
from .export import (RunManifest, mesh_manifest, surface_mesh, trace_results,
                     write_curve_csv, write_obj)
from .loxodrome import LoxodromeSpec, check_b0_admissible
from .solver import IntegrationConfig, angle_deviation, integrate_loxodrome
from .surfaces import Family, TwistedSurface, causal_flags, first_form
from .worked_examples import EXAMPLES, run_example, write_example_outputs

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 2, 3

_Q = {"space": 1, "time": -1}
_BRANCH = {"plus": 1, "minus": -1}


class _UsageError(Exception):
    pass


def _surface_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--f", required=True, help="profile f(y)")
    p.add_argument("--g", required=True, help="profile g(y)")


def _surface(ns) -> TwistedSurface:
    return TwistedSurface(ns.family, ns.a, ns.b, ns.f, ns.g)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# -- classify ----------------------------------------------------------------

def cmd_classify(ns) -> int:
    S = _surface(ns)
    F = first_form(S, ns.x, ns.y)
    fl = causal_flags(F)
    kind = {1: "spacelike", -1: "timelike"}
    print(f"g11 = {F.g11 + 0.0:.12g}")
    print(f"g12 = {F.g12 + 0.0:.12g}")
    print(f"g22 = {F.g22 + 0.0:.12g}")
    print(f"det = {F.det + 0.0:.12g}")
    print(f"p = {fl.p:+d} (surface {kind[fl.p]})")
    print(f"r = {fl.r:+d} (meridian {kind[fl.r]})")
    if fl.degenerate:
        print("warning: first form is degenerate at this point")
    return EXIT_OK


# -- solve -------------------------------------------------------------------

def _solve_manifest(ns) -> RunManifest:
    if ns.manifest:
        m = RunManifest.loads(Path(ns.manifest).read_text(encoding="utf-8"))
        m.results, m.outputs = {}, []
        return m
    missing = [n for n in ("family", "a", "b", "f", "g", "theta", "x0", "x1", "y0")
               if getattr(ns, n) is None]
    if missing:
        raise _UsageError("missing arguments: " + ", ".join("--" + n for n in missing))
    try:
        config = IntegrationConfig(ns.x0, ns.x1, ns.y0, rel_tol=ns.rel_tol,
                                   abs_tol=ns.abs_tol, max_samples=ns.samples,
                                   x_anchor=ns.anchor)
        spec = LoxodromeSpec(ns.theta, _Q[ns.q], _BRANCH[ns.branch])
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    return RunManifest(_surface(ns), spec, config)


def cmd_solve(ns) -> int:
    m = _solve_manifest(ns)
    S, spec, cfg = m.surface, m.spec, m.config
    if S.b == 0:
        fl = causal_flags(first_form(S, cfg.anchor, cfg.y0))
        try:
            check_b0_admissible(S.family, fl.p, spec.q, fl.r)
        except UnsupportedCase as exc:
            _err(f"UnsupportedCase: {exc}")
            return EXIT_INFEASIBLE
    trace = integrate_loxodrome(S, spec, cfg)
    if trace.at_start:
        _err(trace.message)
        return EXIT_INFEASIBLE
    dev = angle_deviation(trace, S, spec) if len(trace.samples) > 1 else None
    m.results = trace_results(trace, dev)

    out = Path(ns.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    csv_path = write_curve_csv(trace, out)
    manifest_path = out.with_suffix(".json")
    m.outputs = [csv_path.name]
    manifest_path.write_text(m.dumps(), encoding="utf-8")

    y_lo, y_hi = trace.y_range
    print(f"arc length: {trace.arc_length:.12g}")
    print(f"y range: ({y_lo:.12g}, {y_hi:.12g})")
    print(f"max angle deviation: {'n/a (theta = 0)' if dev is None else format(dev, '.3e')}")
    print(f"terminated: {trace.terminated.value}" + (f" ({trace.message})" if trace.message else ""))
    print(f"wrote {csv_path} and {manifest_path}")
    return EXIT_OK


# -- reproduce-example -------------------------------------------------------

def cmd_reproduce(ns) -> int:
    which = sorted(EXAMPLES) if ns.n == "all" else [int(ns.n)]
    for n in which:
        res = run_example(n)
        print(res.report())
        if ns.out:
            files = write_example_outputs(res, ns.out)
            print("  wrote " + ", ".join(str(f) for f in files))
        print()
    return EXIT_OK


# -- mesh --------------------------------------------------------------------

def cmd_mesh(ns) -> int:
    S = _surface(ns)
    try:
        verts, faces = surface_mesh(S, (ns.x0, ns.x1), (ns.y0, ns.y1), ns.nx, ns.ny)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    out = write_obj(ns.out, verts, faces,
                    mesh_manifest(S, (ns.x0, ns.x1), (ns.y0, ns.y1), ns.nx, ns.ny))
    print(f"wrote {out}: {len(verts)} vertices, {len(faces)} triangles")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistlox",
                                 description="Loxodromes on twisted surfaces in Minkowski 3-space.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="first form and causal flags at a point")
    _surface_args(c)
    c.add_argument("--x", type=float, required=True)
    c.add_argument("--y", type=float, required=True)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", help="integrate a loxodrome, write CSV and manifest")
    s.add_argument("--family", choices=[f.value for f in Family])
    for name in ("a", "b", "theta", "x0", "x1", "y0"):
        s.add_argument(f"--{name}", type=float)
    s.add_argument("--f")
    s.add_argument("--g")
    s.add_argument("--q", choices=sorted(_Q), default="space")
    s.add_argument("--branch", choices=sorted(_BRANCH), default="minus")
    s.add_argument("--anchor", type=float, default=None,
                   help="x at which y = y0 (default: x0)")
    s.add_argument("--rel-tol", type=float, default=1e-10)
    s.add_argument("--abs-tol", type=float, default=1e-12)
    s.add_argument("--samples", type=int, default=1001)
    s.add_argument("--manifest", help="rerun from a saved manifest instead of flags")
    s.add_argument("--out", required=True, help="curve CSV path; the manifest goes next to it")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reproduce-example", help="rerun a worked example")
    r.add_argument("n", choices=[str(k) for k in sorted(EXAMPLES)] + ["all"])
    r.add_argument("--out", help="directory for CSV, OBJ and manifest files")
    r.set_defaults(func=cmd_reproduce)

    m = sub.add_parser("mesh", help="triangulated OBJ mesh of a surface patch")
    _surface_args(m)
    for name in ("x0", "x1", "y0", "y1"):
        m.add_argument(f"--{name}", type=float, required=True)
    m.add_argument("--nx", type=int, default=64)
    m.add_argument("--ny", type=int, default=64)
    m.add_argument("--out", required=True)
    m.set_defaults(func=cmd_mesh)
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except (_UsageError, TwistloxError, ValueError) as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
