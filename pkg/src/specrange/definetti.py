"""Large-j limit surfaces over the Bloch sphere and finite-j convergence sweeps.

In the symmetric-subspace limit the scaled mean vectors reduce to products of
Bloch components: power triples map the sphere through (x^g, y^g, z^g) and the
anticommutator triples through ((2xz)^g, (2yz)^g, (2xy)^g). Fractional powers
of negative reals use the real signed root sign(s)|s|^(1/g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedFamily
from .numrange import diag_directions, face, support
from .spinops import HalfInt, ObservableVec, anticomm_vec, power_vec

FAMILY_JPOW = "JPOW"
FAMILY_ANTICOMM = "ANTICOMM"

AM = "AM"
AM_MIN = "AM_MIN"
LMAX_ETA1 = "LMAX_ETA1"
LMIN_ETA1 = "LMIN_ETA1"
MEAN_ETA1 = "MEAN_ETA1"

_ROMAN_GRID = (90, 180)  # Bloch grid used for hull-membership of the gamma=1 region


def signed_root(s: float, gamma: int) -> float:
    """Real gamma-th root: sign(s) |s|^(1/gamma)."""
    return math.copysign(abs(s) ** (1.0 / gamma), s)


@dataclass(frozen=True)
class BlochPoint:
    mu: float
    nu: float
    x: float
    y: float
    z: float


@dataclass
class LimitSurface:
    family: str
    gamma: int
    points: np.ndarray  # (N, 3)
    bloch: list[BlochPoint]


def bloch_grid(mu_steps: int, nu_steps: int) -> list[BlochPoint]:
    """mu over [0, pi] inclusive (mu_steps intervals), nu over [0, 2pi)."""
    out = []
    for mu in np.linspace(0.0, math.pi, mu_steps + 1):
        sm, cm = math.sin(mu), math.cos(mu)
        for k in range(nu_steps):
            nu = 2 * math.pi * k / nu_steps
            out.append(BlochPoint(float(mu), float(nu), sm * math.cos(nu), sm * math.sin(nu), cm))
    return out


def surface_jpow(gamma: int, mu_steps: int, nu_steps: int) -> LimitSurface:
    """Image of the Bloch sphere under (x^g, y^g, z^g)."""
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    grid = bloch_grid(mu_steps, nu_steps)
    pts = np.array([[b.x**gamma, b.y**gamma, b.z**gamma] for b in grid])
    return LimitSurface(family=FAMILY_JPOW, gamma=gamma, points=pts, bloch=grid)


def surface_anticomm(gamma: int, mu_steps: int, nu_steps: int) -> LimitSurface:
    """Image of the Bloch sphere under ((2xz)^g, (2yz)^g, (2xy)^g)."""
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    grid = bloch_grid(mu_steps, nu_steps)
    pts = np.array(
        [
            [(2 * b.x * b.z) ** gamma, (2 * b.y * b.z) ** gamma, (2 * b.x * b.y) ** gamma]
            for b in grid
        ]
    )
    return LimitSurface(family=FAMILY_ANTICOMM, gamma=gamma, points=pts, bloch=grid)


_roman_hull_cache: dict[tuple[int, int], np.ndarray] = {}


def _roman_hull_points() -> np.ndarray:
    """Hull vertices of the sampled gamma=1 anticommutator surface.

    Membership against this sample is approximate at the resolution of the
    _ROMAN_GRID Bloch grid (no polyhedral description exists for this hull).
    """
    key = _ROMAN_GRID
    if key not in _roman_hull_cache:
        from scipy.spatial import ConvexHull

        pts = surface_anticomm(1, *key).points
        _roman_hull_cache[key] = pts[ConvexHull(pts).vertices]
    return _roman_hull_cache[key]


def _in_hull(points: np.ndarray, p: np.ndarray) -> bool:
    """Exact hull-of-samples membership via a feasibility program."""
    from scipy.optimize import linprog

    n = len(points)
    a_eq = np.vstack([points.T, np.ones(n)])
    b_eq = np.concatenate([p, [1.0]])
    res = linprog(np.zeros(n), A_eq=a_eq, b_eq=b_eq, bounds=(0.0, None), method="highs")
    return bool(res.status == 0)


def limit_region_contains(family: str, gamma: int, p, tol: float = 1e-9) -> bool:
    """Membership in the large-j limit region of the scaled mean vectors."""
    p = np.asarray(p, dtype=float)
    if family == FAMILY_JPOW:
        if gamma == 1:
            return float(np.linalg.norm(p)) <= 1.0 + tol
        if gamma % 2 == 1:
            return float(np.sum(np.abs(p))) <= 1.0 + tol
        inside_box = bool(np.all(p >= -tol) and np.all(p <= 1.0 + tol))
        root_sum = float(np.sum(np.abs(p) ** (2.0 / gamma)))
        return inside_box and float(np.sum(p)) <= 1.0 + tol and root_sum >= 1.0 - tol
    if family == FAMILY_ANTICOMM:
        if gamma == 1:
            # no polyhedral description: hull of a dense surface sample
            return _in_hull(_roman_hull_points(), p)
        if gamma % 2 == 1:
            return float(np.sum(np.abs(p))) <= 1.0 + tol
        if gamma >= 4:
            return bool(np.all(p >= -tol)) and float(np.sum(p)) <= 1.0 + tol
        raise UnsupportedFamily("no limit-region description for anticommutators at gamma=2")
    raise UnsupportedFamily(f"unknown family {family!r}")


def g_region_contains(vartheta, r, tol: float = 1e-10) -> bool:
    """Membership in G_theta: sum_l (sqrt3 eta_l . r)^(2 theta) <= 4; theta=inf is the octahedron."""
    r = np.asarray(r, dtype=float)
    etas = [d.eta for d in diag_directions()]
    projections = [math.sqrt(3.0) * float(e @ r) for e in etas]
    if vartheta == math.inf:
        return max(abs(p) for p in projections) <= 1.0 + tol
    power = 2 * int(vartheta)
    return sum(p**power for p in projections) <= 4.0 + tol


def _eta1():
    return diag_directions()[0]


def convergence_sweep(family: str, gamma: int, j_list, quantity: str):
    """Series of (j, value) for the chosen normalized quantity.

    AM / AM_MIN: extreme eigenvalues of the first operator; LMAX_ETA1 /
    LMIN_ETA1: extreme eigenvalues of eta_1 . E; MEAN_ETA1: the single-point
    face coordinate at eta_1 divided by the extreme eigenvalue.
    """
    if family == FAMILY_JPOW:
        build, power = power_vec, lambda j: j.j**gamma
    elif family == FAMILY_ANTICOMM:
        build, power = anticomm_vec, lambda j: j.j ** (2 * gamma)
    else:
        raise UnsupportedFamily(f"unknown family {family!r}")
    eta1 = _eta1()
    out = []
    for j in j_list:
        j = j if isinstance(j, HalfInt) else HalfInt.parse(str(j))
        vec: ObservableVec = build(j, gamma)
        scale = power(j)
        if quantity == AM:
            value = vec.ops[0].eig_max / scale
        elif quantity == AM_MIN:
            value = vec.ops[0].eig_min / scale
        elif quantity == LMAX_ETA1:
            value = support(vec, eta1).lambda_max / scale
        elif quantity == LMIN_ETA1:
            spec_min = -support_neg(vec, eta1)
            value = spec_min / scale
        elif quantity == MEAN_ETA1:
            f = face(vec, eta1)
            if not f.is_point:
                raise ValueError(f"face at eta_1 is not a point for j={j}")
            value = float(f.vertices[0][0]) / vec.ops[0].eig_max
        else:
            raise ValueError(f"unknown quantity {quantity!r}")
        out.append((j, float(value)))
    return out


def support_neg(vec: ObservableVec, direction) -> float:
    """lambda_max of the antipodal direction, i.e. -lambda_min of this one."""
    from .numrange import direction3

    anti = direction3(math.pi - direction.theta, (math.pi + direction.phi) % (2 * math.pi))
    return support(vec, anti).lambda_max
