"""File formats: curve CSV, run manifest JSON and surface mesh OBJ."""
from __future__ import annotations

import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .loxodrome import LoxodromeSpec
from .solver import CurveTrace, IntegrationConfig
from .surfaces import TwistedSurface, embed_point

CSV_HEADER = ("x", "y", "X", "Y", "Z", "angle_dev", "s")


def fmt(v: float) -> str:
    """17 significant digits: round-trips any double."""
    return format(float(v), ".17g")


# -- curves ------------------------------------------------------------------

def curve_rows(trace: CurveTrace):
    for smp in trace.samples:
        yield (smp.x, smp.y, *smp.point.as_tuple(), smp.angle_dev, smp.s)


def curve_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_curve_csv(trace: CurveTrace, path) -> Path:
    path = Path(path)
    path.write_bytes(curve_csv(curve_rows(trace)).encode("utf-8"))
    return path


def read_curve_csv(path) -> np.ndarray:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.rstrip("\n").split("\n")
    if tuple(lines[0].split(",")) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {lines[0]!r}")
    return np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]],
                    dtype=float).reshape(-1, len(CSV_HEADER))


def meridian_rows(S: TwistedSurface, y0: float, x_start: float, x_end: float,
                  n: int = 401):
    """Samples of the meridian ``y = y0`` with trapezoidal arc length."""
    from .surfaces import first_form
    xs = np.linspace(x_start, x_end, n)
    speed = [math.sqrt(abs(first_form(S, x, y0).g11)) for x in xs]
    s = 0.0
    for i, x in enumerate(xs):
        if i:
            s += 0.5 * (speed[i] + speed[i - 1]) * abs(xs[i] - xs[i - 1])
        yield (x, y0, *embed_point(S, float(x), y0).as_tuple(), 0.0, s)


# -- manifests ---------------------------------------------------------------

@dataclass
class RunManifest:
    surface: TwistedSurface
    spec: LoxodromeSpec
    config: IntegrationConfig
    results: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface.to_dict(),
            "spec": self.spec.to_dict(),
            "config": self.config.to_dict(),
            "results": self.results,
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        s, sp, c = d["surface"], d["spec"], d["config"]
        return cls(
            surface=TwistedSurface(s["family"], s["a"], s["b"], s["f"], s["g"]),
            spec=LoxodromeSpec(float(sp["theta"]), int(sp["q"]), int(sp["branch"])),
            config=IntegrationConfig(
                x_start=float(c["x_start"]), x_end=float(c["x_end"]), y0=float(c["y0"]),
                rel_tol=float(c["rel_tol"]), abs_tol=float(c["abs_tol"]),
                max_step=c.get("max_step"), max_samples=int(c.get("max_samples", 1001)),
                x_anchor=c.get("x_anchor")),
            results=dict(d.get("results", {})),
            outputs=list(d.get("outputs", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False,
                          default=_json_default) + "\n"

    @classmethod
    def loads(cls, text: str) -> "RunManifest":
        return cls.from_dict(json.loads(text))


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _finite_or_none(v):
    return None if v is None or not math.isfinite(v) else float(v)


def trace_results(trace: CurveTrace, max_angle_dev: float | None) -> dict:
    y_min, y_max = trace.y_range
    p, _, r = trace.flags_used[:3]
    return {
        "arc_length": _finite_or_none(trace.arc_length),
        "y_min": _finite_or_none(y_min),
        "y_max": _finite_or_none(y_max),
        "max_angle_dev": _finite_or_none(max_angle_dev),
        "terminated": trace.terminated.value,
        "message": trace.message,
        "p": p,
        "r": r,
        "p_observed": list(trace.p_observed),
        "n_samples": len(trace.samples),
    }


# -- meshes ------------------------------------------------------------------

def surface_mesh(S: TwistedSurface, x_range, y_range, nx: int, ny: int):
    """Vertices ``(nx*ny, 3)`` and 0-based triangles ``(2(nx-1)(ny-1), 3)``.

    Vertex ``i*ny + j`` sits at ``(x_i, y_j)``: x is the slow index.
    """
    if nx < 2 or ny < 2:
        raise ValueError("mesh grid needs at least 2 points in each direction")
    if x_range[0] == x_range[1] or y_range[0] == y_range[1]:
        raise ValueError("mesh grid ranges must be nondegenerate")
    xs = np.linspace(*x_range, nx)
    ys = np.linspace(*y_range, ny)
    verts = np.array([embed_point(S, float(x), float(y)).as_tuple()
                      for x in xs for y in ys])
    faces = []
    for i in range(nx - 1):
        for j in range(ny - 1):
            v00, v01 = i * ny + j, i * ny + j + 1
            v10, v11 = v00 + ny, v01 + ny
            faces.append((v00, v10, v11))
            faces.append((v00, v11, v01))
    return verts, np.array(faces, dtype=int)


def mesh_manifest(S: TwistedSurface, x_range, y_range, nx, ny) -> dict:
    return {"surface": S.to_dict(),
            "grid": {"x": [float(v) for v in x_range], "y": [float(v) for v in y_range],
                     "nx": nx, "ny": ny}}


def manifest_hash(d: dict) -> str:
    blob = json.dumps(d, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def write_obj(path, verts, faces, manifest: dict) -> Path:
    path = Path(path)
    lines = [f"# twistlox surface mesh",
             f"# manifest-sha256: {manifest_hash(manifest)}",
             f"# manifest: {json.dumps(manifest, sort_keys=True)}"]
    lines += [f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in verts]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in faces]
    path.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
    return path


def read_obj(path) -> tuple[np.ndarray, np.ndarray]:
    verts, faces = [], []
    for ln in Path(path).read_text(encoding="utf-8").splitlines():
        if ln.startswith("v "):
            verts.append([float(v) for v in ln.split()[1:]])
        elif ln.startswith("f "):
            faces.append([int(v) - 1 for v in ln.split()[1:]])
    return np.array(verts), np.array(faces, dtype=int)
