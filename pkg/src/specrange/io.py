"""CSV/JSON/SVG emitters for sweep results.

Numeric CSV fields carry 12 significant digits; row order is grid order.
JSON documents are emitted with a fixed layout so a read/re-serialize
round-trip is byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .bounds import BoundReport
from .numrange import Boundary2D, Hyperrect, Mesh3D
from .spinops import HalfInt, ObservableVec


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


def csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(c) if isinstance(c, (str, int)) else fmt(c) for c in row))
    return "\n".join(lines) + "\n"


def boundary_csv(boundary: Boundary2D) -> str:
    rows = []
    for f in boundary.samples:
        for idx, v in enumerate(f.vertices):
            rows.append([f.direction.phi, f.lambda_max, f.multiplicity, v[0], v[1], idx])
    return csv_text(["phi", "lambda_max", "multiplicity", "v1", "v2", "vertex_index"], rows)


def mesh_csv(mesh: Mesh3D) -> str:
    rows = []
    for k, theta in enumerate(mesh.thetas):
        row = mesh.grid[k]
        faces = [row[0]] if k in (0, len(mesh.thetas) - 1) else row
        for f in faces:
            for idx, v in enumerate(f.vertices):
                rows.append([theta, f.direction.phi, f.lambda_max, f.multiplicity, v[0], v[1], v[2], idx])
    return csv_text(
        ["theta", "phi", "lambda_max", "multiplicity", "v1", "v2", "v3", "vertex_index"], rows
    )


def gaps_csv(mesh: Mesh3D) -> str:
    rows = []
    for k, theta in enumerate(mesh.thetas):
        row = mesh.grid[k]
        faces = [row[0]] if k in (0, len(mesh.thetas) - 1) else row
        for f in faces:
            rows.append([theta, f.direction.phi, f.lambda_max, f.gap if f.gap is not None else float("nan")])
    return csv_text(["theta", "phi", "lambda_max", "gap"], rows)


def surface_csv(surface) -> str:
    rows = []
    for b, p in zip(surface.bloch, surface.points):
        rows.append([b.mu, b.nu, p[0], p[1], p[2]])
    return csv_text(["mu", "nu", "p1", "p2", "p3"], rows)


def sweep_csv(series, quantity: str) -> str:
    rows = [[j.twice, quantity.lower(), value] for j, value in series]
    return csv_text(["j_twice", "quantity", "value"], rows)


def boundary_json(boundary: Boundary2D, j: HalfInt, set_name: str, gamma: int) -> str:
    doc = {
        "j_twice": j.twice,
        "set": set_name,
        "gamma": gamma,
        "faces": [
            {
                "phi": f.direction.phi,
                "lambda_max": f.lambda_max,
                "multiplicity": f.multiplicity,
                "vertices": [[float(c) for c in v] for v in f.vertices],
            }
            for f in boundary.samples
        ],
        "hull": [[float(c) for c in v] for v in boundary.hull],
    }
    return json.dumps(doc, indent=2) + "\n"


def bounds_json(report: BoundReport, j: HalfInt, set_name: str, gamma: int) -> str:
    measures = []
    for res in report.results:
        entry: dict = {"kind": res.kind.tag}
        if res.kind.kappa is not None:
            entry["kappa"] = res.kind.kappa
        entry["value"] = res.value
        entry["sense"] = res.sense
        entry["angles"] = [
            {"phi": a[0]} if len(a) == 1 else {"theta": a[0], "phi": a[1]} for a in res.angles
        ]
        measures.append(entry)
    doc = {
        "j_twice": j.twice,
        "set": set_name,
        "gamma": gamma,
        "measures": measures,
        "trivial": report.trivial,
        "hyperrect": {"lo": list(report.rect.lo), "hi": list(report.rect.hi)},
    }
    return json.dumps(doc, indent=2) + "\n"


def ops_json(vec: ObservableVec, set_name: str) -> str:
    doc = {
        "j_twice": vec.j.twice,
        "set": set_name,
        "gamma": vec.gamma,
        "dim": vec.dim,
        "operators": [
            {
                "label": op.label,
                "eig_min": op.eig_min,
                "eig_max": op.eig_max,
                "re": [[float(x) for x in row] for row in op.mat.real],
                "im": [[float(x) for x in row] for row in op.mat.imag],
            }
            for op in vec.ops
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def svg_polyline(points: np.ndarray, width: int = 480, height: int = 480, margin: int = 24) -> str:
    """Minimal closed-polyline plot of a 2D point loop."""
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-30)
    scale = min((width - 2 * margin) / span[0], (height - 2 * margin) / span[1])

    def to_px(p):
        x = margin + (p[0] - lo[0]) * scale
        y = height - margin - (p[1] - lo[1]) * scale
        return f"{x:.2f},{y:.2f}"

    loop = np.vstack([pts, pts[:1]])
    path = " ".join(to_px(p) for p in loop)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'  <rect width="{width}" height="{height}" fill="white"/>\n'
        f'  <polyline points="{path}" fill="none" stroke="#c02020" stroke-width="1.5"/>\n'
        "</svg>\n"
    )


def boundary_svg(boundary: Boundary2D) -> str:
    return svg_polyline(boundary.hull)


def mesh_svg(mesh: Mesh3D) -> str:
    """2D projection of the mesh vertices onto the first two coordinates."""
    pts = mesh.all_vertices()[:, :2]
    hull_like = pts[np.argsort(np.arctan2(pts[:, 1] - pts[:, 1].mean(), pts[:, 0] - pts[:, 0].mean()))]
    return svg_polyline(hull_like)
