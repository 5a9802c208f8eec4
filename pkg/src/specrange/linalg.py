"""Dense complex Hermitian linear algebra with certified residual accuracy.

All matrices are square numpy complex128 arrays. Eigendecompositions are
delegated to LAPACK (numpy.linalg.eigh), which meets the residual contract
``|A v - lambda v| <= 1e-10 |A|_F`` for the dimensions used here (d <= 201);
eigenvectors inside numerically degenerate clusters are re-orthonormalized
with modified Gram-Schmidt before being exposed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NonFinite,
    NonHermitian,
    NotNormalized,
)

HERMITICITY_RTOL = 1e-12
NORM_TOL = 1e-12
# relative gap below which adjacent eigenvalues count as one cluster
CLUSTER_RTOL = 1e-12


def as_cmatrix(entries) -> np.ndarray:
    """Coerce to a finite square complex matrix."""
    mat = np.asarray(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise NonFinite("matrix has non-finite entries")
    return mat


def check_hermitian(mat: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(mat))) if mat.size else 0.0)
    asym = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
    if asym > HERMITICITY_RTOL * scale:
        raise NonHermitian(f"max asymmetry {asym:.3e} exceeds {HERMITICITY_RTOL:.0e}*{scale:.3e}")


@dataclass(frozen=True)
class Spectrum:
    """Full ascending spectrum with orthonormal eigenvector columns."""

    values: np.ndarray  # (d,), nondecreasing
    vectors: np.ndarray  # (d, d), column k pairs with values[k]

    @property
    def dim(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class HermObservable:
    """Hermitian matrix with cached extreme eigenvalues; one coordinate of the mean vector."""

    mat: np.ndarray
    label: str
    eig_min: float
    eig_max: float

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def make_hermitian(entries, label: str = "") -> HermObservable:
    """Validate and wrap a Hermitian matrix, caching its extreme eigenvalues."""
    mat = as_cmatrix(entries)
    check_hermitian(mat)
    mat = (mat + mat.conj().T) / 2.0  # bitwise Hermitian from here on
    mat.setflags(write=False)
    try:
        vals = np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermObservable(mat=mat, label=label, eig_min=float(vals[0]), eig_max=float(vals[-1]))


def _mgs_orthonormalize(block: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on the columns of block."""
    out = block.copy()
    for k in range(out.shape[1]):
        for i in range(k):
            out[:, k] -= (out[:, i].conj() @ out[:, k]) * out[:, i]
        nrm = np.linalg.norm(out[:, k])
        if nrm > 0:
            out[:, k] /= nrm
    return out


def eig_hermitian(mat) -> Spectrum:
    """Full ascending eigendecomposition of a Hermitian matrix."""
    mat = as_cmatrix(mat)
    check_hermitian(mat)
    try:
        values, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    # re-orthonormalize degenerate clusters so downstream compressions are stable
    scale = max(1.0, float(abs(values[-1])), float(abs(values[0])))
    d = len(values)
    start = 0
    for k in range(1, d + 1):
        if k == d or values[k] - values[k - 1] > CLUSTER_RTOL * scale:
            if k - start > 1:
                vectors[:, start:k] = _mgs_orthonormalize(vectors[:, start:k])
            start = k
    values.setflags(write=False)
    vectors.setflags(write=False)
    return Spectrum(values=values, vectors=vectors)


def combine_matrix(coeffs, mats) -> np.ndarray:
    """Real-linear combination of matrices (no validation; hot path)."""
    out = np.zeros_like(mats[0])
    for c, m in zip(coeffs, mats):
        out += float(c) * m
    return out


def combine(terms) -> HermObservable:
    """Real-linear combination ``sum(c_k * A_k)`` of same-dimension observables."""
    terms = list(terms)
    if not terms:
        raise DimensionMismatch("empty combination")
    dim = terms[0][1].dim
    for _, obs in terms:
        if obs.dim != dim:
            raise DimensionMismatch("operands differ in dimension")
    mat = combine_matrix([c for c, _ in terms], [obs.mat for _, obs in terms])
    label = " + ".join(f"{float(c):g}*{obs.label or 'op'}" for c, obs in terms)
    return make_hermitian(mat, label=label)


def matmul(a, b) -> np.ndarray:
    """Standard matrix product."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def expectation(obs: HermObservable, psi) -> float:
    """Born-rule mean value <psi|A|psi> for a unit vector psi."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if psi.shape[0] != obs.dim:
        raise DimensionMismatch(f"state length {psi.shape[0]} != dim {obs.dim}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > NORM_TOL:
        raise NotNormalized(f"|psi| = {nrm!r}")
    return float(np.real(psi.conj() @ (obs.mat @ psi)))


def char_coeffs(obs: HermObservable) -> np.ndarray:
    """Characteristic-polynomial coefficients S_0..S_d via the Newton recursion.

    S_l are the elementary symmetric functions of the eigenvalues, computed
    from traces of matrix powers: S_0 = 1, S_l = (1/l) sum_{i=1..l}
    (-1)^(i-1) tr(A^i) S_{l-i}.
    """
    d = obs.dim
    power_traces = np.empty(d + 1)
    acc = np.eye(d, dtype=np.complex128)
    for i in range(1, d + 1):
        acc = acc @ obs.mat
        power_traces[i] = float(np.real(np.trace(acc)))
    coeffs = np.empty(d + 1)
    coeffs[0] = 1.0
    for l in range(1, d + 1):
        s = 0.0
        for i in range(1, l + 1):
            s += (-1.0) ** (i - 1) * power_traces[i] * coeffs[l - i]
        coeffs[l] = s / l
    return coeffs
