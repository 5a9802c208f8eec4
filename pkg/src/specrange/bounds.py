"""Uncertainty/certainty measures on mean vectors and their tight bounds.

Each coordinate x with spectral interval [lo, hi] is mapped to the pair
dot = (hi-x)/(hi-lo), ring = (x-lo)/(hi-lo); concave measures (entropy-like h,
u_kappa for kappa < 1) are minimized over the boundary, convex ones
(u_kappa for kappa > 1, u_max) maximized. Optima found on the sweep grid are
refined by golden-section search in the angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRange, EmptyBoundary
from .numrange import (
    Boundary2D,
    FaceOpts,
    Hyperrect,
    Mesh3D,
    direction2,
    direction3,
    face,
)
from .spinops import ObservableVec

MIN = "min"
MAX = "max"

RANGE_TOL = 1e-12
CLAMP_TOL = 1e-9
# uncertified weights this close to an endpoint are floored, never zeroed:
# kappa < 1 measures have unbounded slope there, and flooring keeps local
# search from undercutting the true optimum inside the coordinate noise zone
# (exact endpoints arrive bitwise from certified face vertices)
RING_FLOOR = 5e-16
VALUE_TOL = 1e-9
ANGLE_TOL = 1e-7
MAX_REFINE = 16

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MeasureKind:
    """h | u(kappa) | umax."""

    tag: str
    kappa: float | None = None

    def __post_init__(self):
        if self.tag not in ("h", "u", "umax"):
            raise ValueError(f"unknown measure tag {self.tag!r}")
        if self.tag == "u":
            if self.kappa is None or not self.kappa > 0:
                raise ValueError("u measure needs kappa > 0")
        elif self.kappa is not None:
            raise ValueError(f"{self.tag} takes no kappa")

    @property
    def sense(self) -> str:
        """Concave measures bound from below (MIN), convex from above (MAX)."""
        if self.tag == "h" or (self.tag == "u" and self.kappa < 1):
            return MIN
        return MAX

    @classmethod
    def h(cls) -> "MeasureKind":
        return cls("h")

    @classmethod
    def u(cls, kappa: float) -> "MeasureKind":
        return cls("u", float(kappa))

    @classmethod
    def umax(cls) -> "MeasureKind":
        return cls("umax")

    @classmethod
    def parse(cls, text: str) -> "MeasureKind":
        text = text.strip().lower()
        if text == "h":
            return cls.h()
        if text == "umax":
            return cls.umax()
        if text.startswith("u"):
            return cls.u(float(text[1:]))
        raise ValueError(f"cannot parse measure {text!r}")

    def __str__(self) -> str:
        if self.tag == "u":
            return f"u{self.kappa:g}"
        return self.tag


def normalize_mean(x: float, lo: float, hi: float) -> tuple[float, float]:
    """Split x in [lo, hi] into the complementary weights (dot, ring)."""
    width = hi - lo
    if width <= RANGE_TOL:
        raise DegenerateRange(f"interval [{lo}, {hi}] has zero width")
    slack = CLAMP_TOL * max(1.0, width)
    if x < lo - slack or x > hi + slack:
        raise ValueError(f"x={x} outside [{lo}, {hi}] beyond clamp tolerance")
    if x == lo:
        return 1.0, 0.0
    if x == hi:
        return 0.0, 1.0
    x = min(max(x, lo), hi)
    ring = (x - lo) / width
    ring = min(max(ring, RING_FLOOR), 1.0 - RING_FLOOR)
    return 1.0 - ring, ring


def measure(kind: MeasureKind, x: float, lo: float, hi: float) -> float:
    dot, ring = normalize_mean(x, lo, hi)
    if kind.tag == "h":
        out = 0.0
        for w in (dot, ring):
            if w > 0.0:
                out -= w * math.log(w)
        return out
    if kind.tag == "u":
        return dot**kind.kappa + ring**kind.kappa
    return max(dot, ring)


def combined(kind: MeasureKind, r, rect: Hyperrect) -> float:
    """Sum of the per-coordinate measure over the mean vector r."""
    r = np.asarray(r, dtype=float)
    if r.shape != (rect.n,):
        raise ValueError(f"point shape {r.shape} does not match rect n={rect.n}")
    return sum(measure(kind, float(x), lo, hi) for x, lo, hi in zip(r, rect.lo, rect.hi))


@dataclass
class MeasureResult:
    kind: MeasureKind
    value: float
    sense: str
    angles: list[tuple[float, ...]]  # (phi,) for 2D, (theta, phi) for 3D


@dataclass
class BoundReport:
    results: list[MeasureResult]
    trivial: bool
    rect: Hyperrect


def _face_value(kind: MeasureKind, f, rect: Hyperrect, sense: str) -> float:
    vals = [combined(kind, v, rect) for v in f.vertices]
    return min(vals) if sense == MIN else max(vals)


def _golden_section(fn, a: float, b: float, sense: str, tol: float) -> tuple[float, float]:
    """Golden-section extremum of fn on [a, b]; returns the best evaluated sample."""
    better = (lambda u, v: u < v) if sense == MIN else (lambda u, v: u > v)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    best = (c, fc) if better(fc, fd) else (d, fd)
    while abs(b - a) > tol:
        if better(fc, fd):
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
            if better(fc, best[1]):
                best = (c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
            if better(fd, best[1]):
                best = (d, fd)
    x = (a + b) / 2.0
    fx = fn(x)
    if better(fx, best[1]):
        best = (x, fx)
    return best


def _local_optima_2d(values: list[float], sense: str) -> list[int]:
    n = len(values)
    cmp = (lambda u, v: u <= v) if sense == MIN else (lambda u, v: u >= v)
    return [k for k in range(n) if cmp(values[k], values[k - 1]) and cmp(values[k], values[(k + 1) % n])]


def _local_optima_3d(values: np.ndarray, sense: str) -> list[tuple[int, int]]:
    rows, cols = values.shape
    cmp = (lambda u, v: u <= v) if sense == MIN else (lambda u, v: u >= v)
    out = []
    for k in range(rows):
        for kp in range(cols):
            if k in (0, rows - 1) and kp != 0:
                continue  # pole rows share one face; keep a single candidate
            v = values[k, kp]
            neighbors = [values[k, (kp - 1) % cols], values[k, (kp + 1) % cols]]
            if k > 0:
                neighbors.append(values[k - 1, kp])
            if k < rows - 1:
                neighbors.append(values[k + 1, kp])
            if all(cmp(v, w) for w in neighbors):
                out.append((k, kp))
    return out


def optimize_bounds(
    vec: ObservableVec,
    boundary: Boundary2D | Mesh3D,
    kinds,
    angle_tol: float = ANGLE_TOL,
    value_tol: float = VALUE_TOL,
) -> BoundReport:
    """Tight bound of each measure over the boundary, with attaining angles.

    Grid optima are refined by golden-section search on phi (2D) or
    coordinate descent over (theta, phi) (3D); every evaluated angle whose
    value lies within value_tol of the optimum is reported.
    """
    rect = _rect_for(vec)
    kinds = [MeasureKind.parse(k) if isinstance(k, str) else k for k in kinds]
    is_2d = isinstance(boundary, Boundary2D)
    if is_2d and not boundary.samples:
        raise EmptyBoundary("boundary carries no faces")
    opts = FaceOpts(deg_tol=boundary.deg_tol)
    results = []
    for kind in kinds:
        sense = kind.sense
        if is_2d:
            results.append(_optimize_2d(vec, boundary, kind, sense, rect, opts, angle_tol, value_tol))
        else:
            results.append(_optimize_3d(vec, boundary, kind, sense, rect, opts, angle_tol, value_tol))
    trivial, _ = triviality_check(vec, boundary, rect)
    return BoundReport(results=results, trivial=trivial, rect=rect)


def _rect_for(vec: ObservableVec) -> Hyperrect:
    from .numrange import hyperrect

    return hyperrect(vec)


def _collect(evaluated, best: float, sense: str, value_tol: float, angle_tol: float):
    keep = []
    for angles, value in evaluated:
        if abs(value - best) <= value_tol:
            if not any(all(abs(a - b) <= 10 * angle_tol for a, b in zip(angles, kept)) for kept in keep):
                keep.append(angles)
    return sorted(keep)


def _optimize_2d(vec, boundary, kind, sense, rect, opts, angle_tol, value_tol) -> MeasureResult:
    phis = [f.direction.phi for f in boundary.samples]
    values = [_face_value(kind, f, rect, sense) for f in boundary.samples]
    better = (lambda u, v: u < v) if sense == MIN else (lambda u, v: u > v)
    step = 2 * math.pi / len(phis)

    def objective(phi: float) -> float:
        return _face_value(kind, face(vec, direction2(phi % (2 * math.pi)), opts), rect, sense)

    evaluated = list(zip([(p,) for p in phis], values))
    candidates = _local_optima_2d(values, sense)
    candidates.sort(key=lambda k: values[k], reverse=(sense == MAX))
    best = min(values) if sense == MIN else max(values)
    for k in candidates[:MAX_REFINE]:
        x, v = _golden_section(objective, phis[k] - step, phis[k] + step, sense, angle_tol)
        x %= 2 * math.pi
        evaluated.append(((x,), v))
        if better(v, best):
            best = v
    angles = _collect(evaluated, best, sense, value_tol, angle_tol)
    return MeasureResult(kind=kind, value=best, sense=sense, angles=angles)


def _optimize_3d(vec, boundary, kind, sense, rect, opts, angle_tol, value_tol) -> MeasureResult:
    thetas, phis = boundary.thetas, boundary.phis
    rows = len(thetas)
    cols = len(phis)
    values = np.empty((rows, cols))
    for k in range(rows):
        row = boundary.grid[k]
        if k in (0, rows - 1):
            values[k, :] = _face_value(kind, row[0], rect, sense)
        else:
            for kp in range(cols):
                values[k, kp] = _face_value(kind, row[kp], rect, sense)
    better = (lambda u, v: u < v) if sense == MIN else (lambda u, v: u > v)
    dtheta = math.pi / (rows - 1)
    dphi = 2 * math.pi / cols

    def objective(theta: float, phi: float) -> float:
        theta = min(max(theta, 0.0), math.pi)
        f = face(vec, direction3(theta, phi % (2 * math.pi)), opts)
        return _face_value(kind, f, rect, sense)

    evaluated = [((float(thetas[k]), float(phis[kp])), values[k, kp]) for k in range(rows) for kp in range(cols)]
    candidates = _local_optima_3d(values, sense)
    candidates.sort(key=lambda idx: values[idx], reverse=(sense == MAX))
    best = float(values.min() if sense == MIN else values.max())
    for k, kp in candidates[:MAX_REFINE]:
        th, ph = float(thetas[k]), float(phis[kp])
        v = values[k, kp]
        half_t, half_p = dtheta, dphi
        for _ in range(6):
            th, v_t = _golden_section(lambda t: objective(t, ph), max(0.0, th - half_t), min(math.pi, th + half_t), sense, angle_tol)
            ph, v_p = _golden_section(lambda p: objective(th, p), ph - half_p, ph + half_p, sense, angle_tol)
            half_t, half_p = half_t / 3.0, half_p / 3.0
            if abs(v_p - v) <= 1e-13 * max(1.0, abs(v_p)):
                v = v_p
                break
            v = v_p
        ph %= 2 * math.pi
        evaluated.append(((th, ph), v))
        if better(v, best):
            best = v
    angles = _collect(evaluated, best, sense, value_tol, angle_tol)
    return MeasureResult(kind=kind, value=best, sense=sense, angles=angles)


def region_contains(kind: MeasureKind, bound: float, sense: str, r, rect: Hyperrect, tol: float = 1e-9) -> bool:
    """Membership in the bound region R = {r : combined respects the bound}."""
    value = combined(kind, r, rect)
    slack = tol * max(1.0, abs(bound))
    if sense == MIN:
        return value >= bound - slack
    return value <= bound + slack


def triviality_check(vec: ObservableVec, boundary, rect: Hyperrect | None = None, tol: float = 1e-6):
    """Flag (plus witnessing corner) when a hyperrect corner sits on the boundary.

    A shared corner makes every bound of this family trivial.
    """
    if rect is None:
        rect = _rect_for(vec)
    verts = boundary.all_vertices()
    scale = max(1.0, max(h - l for l, h in zip(rect.lo, rect.hi)))
    for corner in rect.corners():
        dist = float(np.min(np.linalg.norm(verts - corner, axis=1)))
        if dist <= tol * scale:
            return True, tuple(corner)
    return False, None
