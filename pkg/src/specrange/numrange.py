"""Supporting-hyperplane sweep over Hermitian operator vectors.

For each unit direction eta the top eigenvalue of eta.E gives a supporting
hyperplane of the allowed region of mean vectors; the states attaining it
generate the touching face. Nondegenerate directions expose a single extreme
point; degenerate ones get their face reconstructed by compressing the
operators onto the top eigenspace and sweeping the compressed vector
recursively (depth-limited).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyBoundary, NoConvergence, NotCommuting
from .linalg import combine_matrix, eig_hermitian
from .parallel import grid_map
from .spinops import ObservableVec

DEG_TOL_DEFAULT = 1e-8
DEDUP_TOL = 1e-8
COLLINEAR_TOL = 1e-10

# body-diagonal unit vectors (+1,+1,+1)/sqrt3 family with component product +1;
# the four directions where odd-dimensional sweeps go degenerate
DIAG_SIGNS = ((1, 1, 1), (-1, 1, -1), (-1, -1, 1), (1, -1, -1))


@dataclass(frozen=True)
class Direction:
    """Unit direction in mean-value space with its spherical angles."""

    eta: np.ndarray
    phi: float
    theta: float | None = None  # None for n=2

    @property
    def n(self) -> int:
        return len(self.eta)


def direction2(phi: float) -> Direction:
    eta = np.array([math.cos(phi), math.sin(phi)])
    return Direction(eta=eta, phi=phi)


def direction3(theta: float, phi: float) -> Direction:
    st = math.sin(theta)
    eta = np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])
    return Direction(eta=eta, phi=phi, theta=theta)


def diag_directions() -> list[Direction]:
    """The four body-diagonal directions (theta_l, phi_l) of the sweep."""
    out = []
    for signs in DIAG_SIGNS:
        theta = math.acos(signs[2] / math.sqrt(3.0))
        phi = math.atan2(signs[1], signs[0]) % (2 * math.pi)
        out.append(direction3(theta, phi))
    return out


@dataclass
class FaceOpts:
    """Knobs for degenerate-face reconstruction."""

    depth: int = 2
    inner_steps: int = 64
    deg_tol: float = DEG_TOL_DEFAULT


@dataclass
class SupportFace:
    """Per-direction record: support value, eigenspace, and face vertices."""

    direction: Direction
    lambda_max: float
    multiplicity: int
    eigenbasis: np.ndarray  # (d, multiplicity)
    vertices: np.ndarray | None = None  # (k, n) mean vectors
    is_point: bool = False
    gap: float | None = None  # lambda_max minus next eigenvalue below the cluster
    exhausted: bool = False  # recursion bottomed out with unresolved degeneracy


@dataclass
class Boundary2D:
    samples: list[SupportFace]
    hull: np.ndarray  # (h, 2) extreme-point polygon, CCW
    deg_tol: float = DEG_TOL_DEFAULT

    def all_vertices(self) -> np.ndarray:
        return np.vstack([f.vertices for f in self.samples])


@dataclass
class Mesh3D:
    thetas: np.ndarray  # (K+1,)
    phis: np.ndarray  # (K',)
    grid: list[list[SupportFace]]  # (K+1) rows of K' faces; pole rows share one face
    node_points: np.ndarray  # (N, 3) representative vertex per mesh node
    triangles: np.ndarray  # (T, 3) indices into node_points
    deg_tol: float = DEG_TOL_DEFAULT

    def all_vertices(self) -> np.ndarray:
        chunks = [self.grid[0][0].vertices, self.grid[-1][0].vertices]
        for row in self.grid[1:-1]:
            chunks.extend(f.vertices for f in row)
        return np.vstack(chunks)

    def unique_faces(self):
        yield self.grid[0][0]
        for row in self.grid[1:-1]:
            yield from row
        yield self.grid[-1][0]


@dataclass(frozen=True)
class Hyperrect:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.lo)

    def corners(self) -> np.ndarray:
        out = []
        for mask in range(2**self.n):
            out.append([self.hi[i] if mask >> i & 1 else self.lo[i] for i in range(self.n)])
        return np.array(out)


def support(vec: ObservableVec, direction: Direction, deg_tol: float = DEG_TOL_DEFAULT) -> SupportFace:
    """Top eigenvalue, its cluster multiplicity and eigenspace basis (no vertices)."""
    if direction.n != vec.n:
        raise DimensionMismatch(f"direction has {direction.n} components, vector has {vec.n}")
    spec = eig_hermitian(combine_matrix(direction.eta, vec.mats))
    values = spec.values
    lam = float(values[-1])
    tol = deg_tol * max(1.0, abs(lam))
    mult = int(np.sum(values >= lam - tol))
    d = len(values)
    gap = float(lam - values[d - mult - 1]) if mult < d else None
    return SupportFace(
        direction=direction,
        lambda_max=lam,
        multiplicity=mult,
        eigenbasis=spec.vectors[:, d - mult :],
        gap=gap,
    )


def _expectations(mats, psi: np.ndarray) -> np.ndarray:
    return np.array([float(np.real(psi.conj() @ (m @ psi))) for m in mats])


def _inner_directions(n: int, steps: int) -> list[np.ndarray]:
    if n == 2:
        return [np.array([math.cos(p), math.sin(p)]) for p in 2 * math.pi * np.arange(steps) / steps]
    dirs = [np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])]
    for theta in np.linspace(0.0, math.pi, steps // 2 + 1)[1:-1]:
        st, ct = math.sin(theta), math.cos(theta)
        for p in 2 * math.pi * np.arange(steps) / steps:
            dirs.append(np.array([st * math.cos(p), st * math.sin(p), ct]))
    return dirs


def _bloch_spinor(n: np.ndarray) -> np.ndarray:
    theta = math.acos(min(1.0, max(-1.0, n[2])))
    phi = math.atan2(n[1], n[0])
    return np.array(
        [math.cos(theta / 2.0), math.sin(theta / 2.0) * np.exp(1j * phi)], dtype=np.complex128
    )


def _pair_cluster_vertices(mats, lift: np.ndarray, compressed, steps: int):
    """Extreme points of a 2-dim cluster's range, analytically.

    On C^2 each compressed operator is c_i I + v_i . sigma, so the range is
    the affine image of the Bloch sphere: an ellipse ring, a segment, or a
    point, read off from the SVD of the stacked v_i.
    """
    center = np.array([float(np.real(b[0, 0] + b[1, 1])) / 2.0 for b in compressed])
    rows = np.array(
        [
            [
                float(np.real(b[1, 0])),
                float(np.imag(b[1, 0])),
                float(np.real(b[0, 0] - b[1, 1])) / 2.0,
            ]
            for b in compressed
        ]
    )
    u, sig, vt = np.linalg.svd(rows)
    cut = 1e-12 * max(1.0, float(sig[0]), float(np.max(np.abs(center))))
    rank = int(np.sum(sig > cut))
    if rank == 0:
        bloch_dirs = [np.array([0.0, 0.0, 1.0])]
    elif rank == 1:
        bloch_dirs = [vt[0], -vt[0]]
    else:
        angles = 2 * math.pi * np.arange(steps) / steps
        bloch_dirs = [math.cos(t) * vt[0] + math.sin(t) * vt[1] for t in angles]
        if rank == 3:  # near-degenerate cluster: range slightly thickened
            bloch_dirs.extend([vt[2], -vt[2]])
    pairs = []
    for n in bloch_dirs:
        psi = lift @ _bloch_spinor(n)
        pairs.append((center + rows @ n, psi))
    return pairs


def _cluster_vertices(mats, lift: np.ndarray, depth: int, opts: FaceOpts):
    """Vertex/state pairs of the face spanned by lift; returns (pairs, exhausted).

    `lift` maps the current (compressed) space back to the full Hilbert space,
    so expectations are always taken against the original operators.
    """
    m = lift.shape[1]
    if m == 1:
        psi = lift[:, 0]
        return [(_expectations(mats, psi), psi)], False
    compressed = [lift.conj().T @ (mat @ lift) for mat in mats]
    compressed = [(b + b.conj().T) / 2.0 for b in compressed]
    scale = max(1.0, max(float(np.max(np.abs(b))) for b in compressed))
    means = [float(np.real(np.trace(b))) / m for b in compressed]
    if all(
        float(np.max(np.abs(b - mu * np.eye(m)))) <= 1e-10 * scale
        for b, mu in zip(compressed, means)
    ):
        # every eigenspace state maps to the same mean vector: an exposed point
        psi = lift[:, 0]
        return [(_expectations(mats, psi), psi)], False
    if m == 2:
        return _pair_cluster_vertices(mats, lift, compressed, opts.inner_steps), False
    if depth <= 0:
        return [(_expectations(mats, lift[:, k]), lift[:, k]) for k in range(m)], True
    pairs = []
    exhausted = False
    for eta in _inner_directions(len(mats), opts.inner_steps):
        try:
            values, vectors = np.linalg.eigh(combine_matrix(eta, compressed))
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
        lam = float(values[-1])
        tol = opts.deg_tol * max(1.0, abs(lam))
        mult = int(np.sum(values >= lam - tol))
        if mult >= m:
            # the whole compressed space attains this hyperplane; its extreme
            # points are recovered by the non-degenerate inner directions
            continue
        sub, ex = _cluster_vertices(mats, lift @ vectors[:, m - mult :], depth - 1, opts)
        pairs.extend(sub)
        exhausted = exhausted or ex
    if not pairs:
        return [(_expectations(mats, lift[:, k]), lift[:, k]) for k in range(m)], True
    return pairs, exhausted


EXTREME_WINDOW = 1e-10
EXTREME_RESIDUAL = 1e-9


def _certify_extremes(ops, coords: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Snap coordinates to exact spectral endpoints when the state proves it.

    Measures with exponent < 1 have unbounded slope at the interval ends, so
    e-16 coordinate noise would otherwise surface as noise^kappa in bounds;
    the eigen-residual test separates true extreme states cleanly.
    """
    out = coords.copy()
    for i, op in enumerate(ops):
        width = max(1.0, op.eig_max - op.eig_min)
        for ext in (op.eig_min, op.eig_max):
            if abs(out[i] - ext) <= EXTREME_WINDOW * width:
                scale = max(1.0, abs(op.eig_min), abs(op.eig_max))
                if float(np.linalg.norm(op.mat @ psi - ext * psi)) <= EXTREME_RESIDUAL * scale:
                    out[i] = ext
                elif out[i] == ext:
                    # not an extreme state, only a bitwise float collision:
                    # push inside so downstream treats it as a generic value
                    inward = 1e-12 * width
                    out[i] = ext + (inward if ext == op.eig_min else -inward)
                break
    return out


def _dedupe(points: np.ndarray, tol: float) -> np.ndarray:
    if len(points) <= 1:
        return points
    # cell pass is O(n); the greedy pass catches cell-straddling duplicates
    # but only runs on small survivors
    seen: dict[tuple[int, ...], bool] = {}
    keep = []
    for idx, p in enumerate(points):
        key = tuple(int(math.floor(c / tol)) for c in p)
        if key not in seen:
            seen[key] = True
            keep.append(idx)
    points = points[keep]
    if len(points) > 64:
        return points
    kept: list[np.ndarray] = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in kept):
            kept.append(p)
    return np.array(kept)


def _reduce_collinear(points: np.ndarray, tol: float) -> np.ndarray:
    """Collapse a segment-shaped vertex cloud to its two endpoints."""
    if len(points) <= 2:
        return points
    centered = points - points.mean(axis=0)
    axis_len = float(np.max(np.linalg.norm(centered, axis=1)))
    if axis_len <= tol:
        return points[:1]
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    proj = centered @ vt[0]
    residual = centered - np.outer(proj, vt[0])
    if float(np.max(np.abs(residual))) <= tol:
        return points[[int(np.argmin(proj)), int(np.argmax(proj))]]
    return points


def face(vec: ObservableVec, direction: Direction, opts: FaceOpts | None = None) -> SupportFace:
    """Support data plus the face's vertex set in mean-value space."""
    opts = opts or FaceOpts()
    sf = support(vec, direction, opts.deg_tol)
    pairs, exhausted = _cluster_vertices(vec.mats, sf.eigenbasis, opts.depth, opts)
    verts = [_certify_extremes(vec.ops, coords, psi) for coords, psi in pairs]
    scale = max(1.0, max(float(np.max(np.abs(v))) for v in verts))
    points = _dedupe(np.array(verts), DEDUP_TOL * scale)
    points = _reduce_collinear(points, DEDUP_TOL * scale)
    sf.vertices = points
    sf.is_point = len(points) == 1
    sf.exhausted = exhausted
    return sf


def _cross2(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _between_chord(a, c, b, tol: float) -> bool:
    """True when b lies on the segment a-c within distance tol."""
    chord = c - a
    length2 = float(chord @ chord)
    if length2 == 0.0:
        return float(np.linalg.norm(b - a)) <= tol
    t = float((b - a) @ chord) / length2
    if t < -1e-12 or t > 1.0 + 1e-12:
        return False
    dist = abs(_cross2(a, c, b)) / math.sqrt(length2)
    return dist <= tol


def convex_hull_2d(points: np.ndarray, collinear_tol: float = COLLINEAR_TOL) -> np.ndarray:
    """Monotone-chain hull, CCW, with collinear vertices pruned.

    The chain itself runs with exact comparisons (a toleranced chain can drop
    a far corner when near-duplicate extremes create e-16-long edges); the
    collinearity tolerance is then applied as a chord-distance prune, scaled
    by max(1, max|coordinate|) so the stated 1e-10 applies at unit scale.
    """
    pts = np.asarray(points, dtype=float)
    scale = max(1.0, float(np.max(np.abs(pts))))
    # merge floating-point noise clusters so duplicates cannot seed the chain
    cell = 1e-9 * scale
    seen: dict[tuple[int, ...], int] = {}
    keep_idx = []
    for idx, p in enumerate(pts):
        key = tuple(int(math.floor(c / cell)) for c in p)
        if key not in seen:
            seen[key] = idx
            keep_idx.append(idx)
    pts = pts[keep_idx]
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
    if len(pts) == 1:
        return pts

    def half(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and _cross2(out[-2], out[-1], p) <= 0.0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        return np.array(hull) if hull else pts[:1]
    # prune interior points of straight runs (the anchor hull[0] itself can
    # be a mid-edge point displaced by e-16, so finish with a ring pass)
    tol = collinear_tol * scale
    out = [hull[0]]
    for p in hull[1:]:
        while len(out) >= 2 and _between_chord(out[-2], p, out[-1], tol):
            out.pop()
        out.append(p)
    while len(out) >= 3 and _between_chord(out[-2], out[0], out[-1], tol):
        out.pop()
    while len(out) > 2:
        n = len(out)
        for i in range(n):
            if _between_chord(out[(i - 1) % n], out[(i + 1) % n], out[i], tol):
                out.pop(i)
                break
        else:
            break
    return np.array(out)


def boundary2d(
    vec: ObservableVec,
    steps: int = 360,
    deg_tol: float = DEG_TOL_DEFAULT,
    opts: FaceOpts | None = None,
) -> Boundary2D:
    """Faces at phi_k = 2 pi k / steps plus the convex hull of their vertices."""
    if vec.n != 2:
        raise DimensionMismatch("boundary2d needs a 2-operator vector")
    if steps < 8:
        raise ValueError("steps must be >= 8")
    base = opts or FaceOpts()
    opts = FaceOpts(depth=base.depth, inner_steps=base.inner_steps, deg_tol=deg_tol)
    phis = 2 * math.pi * np.arange(steps) / steps
    samples = grid_map(lambda p: face(vec, direction2(float(p)), opts), phis)
    hull = convex_hull_2d(np.vstack([f.vertices for f in samples]))
    return Boundary2D(samples=samples, hull=hull, deg_tol=deg_tol)


def boundary3d(
    vec: ObservableVec,
    theta_steps: int,
    phi_steps: int,
    deg_tol: float = DEG_TOL_DEFAULT,
    opts: FaceOpts | None = None,
) -> Mesh3D:
    """Lat-long sweep: theta_k = k pi/K (both poles), phi_k' = k' 2pi/K'."""
    if vec.n != 3:
        raise DimensionMismatch("boundary3d needs a 3-operator vector")
    if theta_steps < 4 or phi_steps < 8:
        raise ValueError("theta_steps >= 4 and phi_steps >= 8 required")
    base = opts or FaceOpts()
    opts = FaceOpts(depth=base.depth, inner_steps=base.inner_steps, deg_tol=deg_tol)
    K, Kp = theta_steps, phi_steps
    thetas = np.linspace(0.0, math.pi, K + 1)
    phis = 2 * math.pi * np.arange(Kp) / Kp

    north = face(vec, direction3(0.0, 0.0), opts)
    south = face(vec, direction3(math.pi, 0.0), opts)
    inner_nodes = [(float(t), float(p)) for t in thetas[1:-1] for p in phis]
    inner_faces = grid_map(lambda tp: face(vec, direction3(*tp), opts), inner_nodes)

    grid: list[list[SupportFace]] = [[north] * Kp]
    for k in range(K - 1):
        grid.append(inner_faces[k * Kp : (k + 1) * Kp])
    grid.append([south] * Kp)

    # node ids: 0 = north pole, 1 + (k-1)*Kp + k' for k = 1..K-1, last = south
    def rep(f: SupportFace) -> np.ndarray:
        return f.vertices.mean(axis=0)

    node_points = [rep(north)]
    for row in grid[1:-1]:
        node_points.extend(rep(f) for f in row)
    node_points.append(rep(south))
    node_points = np.array(node_points)
    south_id = len(node_points) - 1

    def node_id(k: int, kp: int) -> int:
        if k == 0:
            return 0
        if k == K:
            return south_id
        return 1 + (k - 1) * Kp + (kp % Kp)

    tris = []
    for k in range(K):
        for kp in range(Kp):
            a, b = node_id(k, kp), node_id(k, kp + 1)
            c, d = node_id(k + 1, kp), node_id(k + 1, kp + 1)
            if k == 0:
                tris.append((a, c, d))
            elif k == K - 1:
                tris.append((a, c, b))
            else:
                tris.append((a, c, d))
                tris.append((a, d, b))
    return Mesh3D(
        thetas=thetas,
        phis=phis,
        grid=grid,
        node_points=node_points,
        triangles=np.array(tris, dtype=int),
        deg_tol=deg_tol,
    )


def hyperrect(vec: ObservableVec) -> Hyperrect:
    """Cartesian product of the operators' spectral intervals."""
    return Hyperrect(
        lo=tuple(op.eig_min for op in vec.ops),
        hi=tuple(op.eig_max for op in vec.ops),
    )


def _membership_directions(n: int, grid) -> list[Direction]:
    if n == 2:
        steps = int(grid)
        return [direction2(2 * math.pi * k / steps) for k in range(steps)]
    K, Kp = grid
    dirs = [direction3(0.0, 0.0), direction3(math.pi, 0.0)]
    for theta in np.linspace(0.0, math.pi, K + 1)[1:-1]:
        for k in range(Kp):
            dirs.append(direction3(float(theta), 2 * math.pi * k / Kp))
    return dirs


def membership(vec: ObservableVec, r, grid) -> float:
    """Signed margin min_eta (lambda_max(eta) - eta.r); negative certifies r outside."""
    r = np.asarray(r, dtype=float)
    if r.shape != (vec.n,):
        raise DimensionMismatch(f"point has shape {r.shape}, expected ({vec.n},)")
    margin = math.inf
    for d in _membership_directions(vec.n, grid):
        spec = eig_hermitian(combine_matrix(d.eta, vec.mats))
        margin = min(margin, float(spec.values[-1]) - float(d.eta @ r))
    return margin


def commuting_polytope(vec: ObservableVec, comm_tol: float = 1e-10, seed: int = 20) -> np.ndarray:
    """Hull vertices of the diagonal mean vectors in a common eigenbasis.

    A random real combination is diagonalized to produce the simultaneous
    eigenbasis; the seed is fixed so results are deterministic.
    """
    mats = vec.mats
    for i in range(len(mats)):
        for k in range(i + 1, len(mats)):
            a, b = mats[i], mats[k]
            scale = max(1.0, float(np.max(np.abs(a))) * float(np.max(np.abs(b))))
            if float(np.max(np.abs(a @ b - b @ a))) > comm_tol * scale:
                raise NotCommuting(
                    f"{vec.ops[i].label!r} and {vec.ops[k].label!r} do not commute"
                )
    rng = np.random.default_rng(seed)
    for _ in range(8):
        coeffs = rng.normal(size=len(mats))
        spec = eig_hermitian(combine_matrix(coeffs, mats))
        basis = spec.vectors
        offdiag = max(
            float(np.max(np.abs(b - np.diag(np.diag(b)))))
            for b in (basis.conj().T @ (m @ basis) for m in mats)
        )
        if offdiag <= 1e-8 * max(1.0, max(float(np.max(np.abs(m))) for m in mats)):
            break
    points = np.array([_expectations(mats, basis[:, l]) for l in range(basis.shape[1])])
    if vec.n == 2:
        return convex_hull_2d(points)
    from scipy.spatial import ConvexHull  # deferred: only 3-op polytopes need it

    pts = _dedupe(points, 1e-10 * max(1.0, float(np.max(np.abs(points)))))
    if len(pts) <= 3:
        return pts
    try:
        return pts[ConvexHull(pts).vertices]
    except Exception:
        return pts  # degenerate (coplanar) clouds are returned as-is


def block_union_range(parts, steps: int) -> Boundary2D:
    """Hull of the union of several 2-operator boundaries (dimensions may differ)."""
    parts = list(parts)
    if not parts:
        raise EmptyBoundary("no parts given")
    samples: list[SupportFace] = []
    vertex_sets = []
    for part in parts:
        if part.n != 2:
            raise DimensionMismatch("block_union_range needs 2-operator vectors")
        b = boundary2d(part, steps=steps)
        samples.extend(b.samples)
        vertex_sets.append(b.all_vertices())
    hull = convex_hull_2d(np.vstack(vertex_sets))
    return Boundary2D(samples=samples, hull=hull)
