"""Dense matrix primitives: compact SVD, Procrustes orthonormalization, norms.

All routines operate on plain ``numpy.ndarray`` values and validate their
inputs (finite entries, consistent shapes) at the public entry points.
Tolerances are centralized in the module-level constants below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ConvergenceError,
    DegenerateInputError,
    DimensionError,
)

# Orthonormality residual allowed on factors we produce.
ORTHO_TOL = 1e-10
# Full-rank reconstruction residual allowed for a compact SVD.
RECONSTRUCTION_TOL = 1e-10
# Singular values below RANK_REL_TOL * sigma_max count as zero.
RANK_REL_TOL = 1e-12


def as_matrix(x, name: str = "matrix", allow_complex: bool = False) -> np.ndarray:
    """Validate *x* as a dense 2-D matrix with finite entries.

    Raises ``DimensionError`` for wrong dimensionality or empty axes and
    ``ValueError`` for NaN/Inf entries.
    """
    arr = np.asarray(x)
    if allow_complex and np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        if np.iscomplexobj(arr):
            raise DimensionError(f"{name}: expected a real matrix, got complex entries")
        arr = arr.astype(np.float64, copy=False)
    if arr.ndim != 2:
        raise DimensionError(f"{name}: expected a 2-D array, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name}: empty dimension in shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite entries are not admitted")
    return arr


def as_vector(x, name: str = "vector") -> np.ndarray:
    """Validate *x* as a 1-D real vector with finite entries."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise DimensionError(f"{name}: expected a non-empty 1-D array")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite entries are not admitted")
    return arr


@dataclass
class CompactSvd:
    """Top-k singular triplet ``u @ diag(sigma) @ v.T`` of a real matrix.

    ``u`` is D-by-k and ``v`` is N-by-k, both with orthonormal columns;
    ``sigma`` holds the k singular values sorted descending.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        if self.u.ndim != 2 or self.v.ndim != 2 or self.sigma.ndim != 1:
            raise DimensionError("CompactSvd: u, v must be 2-D and sigma 1-D")
        k = self.sigma.size
        if self.u.shape[1] != k or self.v.shape[1] != k:
            raise DimensionError("CompactSvd: factor column counts must match sigma")
        if np.any(np.diff(self.sigma) > 0):
            raise ValueError("CompactSvd: sigma must be sorted descending")

    @property
    def k(self) -> int:
        return self.sigma.size

    def reconstruct(self) -> np.ndarray:
        """Return ``u @ diag(sigma) @ v.T``."""
        return (self.u * self.sigma) @ self.v.T


def orthonormality_residual(q: np.ndarray) -> float:
    """Max-abs residual of ``q.T @ q`` against the identity."""
    k = q.shape[1]
    return float(np.max(np.abs(q.T @ q - np.eye(k))))


def _fix_column_signs(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Sign convention: largest-magnitude entry of each u column is positive.
    flip = np.sign(u[np.argmax(np.abs(u), axis=0), np.arange(u.shape[1])])
    flip[flip == 0] = 1.0
    return u * flip, v * flip


def compact_svd(x, k: int) -> CompactSvd:
    """Top-*k* compact singular value decomposition of a real matrix.

    Deterministic up to floating point: column signs are fixed so the
    largest-magnitude entry of each left singular vector is positive.

    Raises ``DimensionError`` if ``k`` exceeds ``min(x.shape)`` and
    ``ConvergenceError`` if the underlying LAPACK routine fails.
    """
    x = as_matrix(x, "x")
    if k < 1:
        raise DimensionError(f"k must be >= 1, got {k}")
    if k > min(x.shape):
        raise DimensionError(f"k={k} exceeds min dimension {min(x.shape)} of shape {x.shape}")
    try:
        u, s, vt = np.linalg.svd(x, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    u, v = _fix_column_signs(u[:, :k], vt[:k].T)
    return CompactSvd(u=u, sigma=s[:k].copy(), v=v)


def numerical_rank(x: np.ndarray) -> int:
    """Rank of *x* counting singular values above ``RANK_REL_TOL * sigma_max``."""
    s = np.linalg.svd(x, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > RANK_REL_TOL * s[0]))


def procrustes_orthonormalize(m) -> np.ndarray:
    """Closest orthonormal matrix to *m*: ``u' @ v'.T`` from its compact SVD.

    Maximizes ``trace(q.T @ m)`` over orthonormal ``q``. Requires *m* to have
    full column rank; otherwise raises ``DegenerateInputError``.
    """
    m = as_matrix(m, "m")
    rows, cols = m.shape
    if rows < cols:
        raise DimensionError(f"need rows >= cols, got shape {m.shape}")
    try:
        u, s, vt = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    if s[0] == 0.0 or s[-1] <= RANK_REL_TOL * s[0]:
        raise DegenerateInputError("input is rank deficient; nearest orthonormal matrix is not unique")
    return u @ vt


def sign_matrix(m) -> np.ndarray:
    """Entrywise sign with the convention ``sgn(0) = +1``.

    Output entries are exactly +/-1, so antipodal binary matrices stay
    antipodal under repeated application.
    """
    m = as_matrix(m, "m")
    return np.where(m >= 0.0, 1.0, -1.0)


def l1_entrywise_norm(m) -> float:
    """Sum of absolute values of all entries."""
    m = as_matrix(m, "m", allow_complex=True)
    return float(np.sum(np.abs(m)))


def realify(y) -> np.ndarray:
    """Stack real parts of a complex matrix above imaginary parts.

    An M-by-T complex matrix becomes the 2M-by-T real matrix
    ``[real(y); imag(y)]``; the Frobenius norm is preserved.
    """
    y = as_matrix(y, "y", allow_complex=True)
    return np.vstack([y.real, y.imag]).astype(np.float64)


def random_orthonormal(rows: int, cols: int, seed) -> np.ndarray:
    """Draw a rows-by-cols matrix with orthonormal columns, Haar distributed.

    Deterministic for a fixed *seed* (an int, ``SeedSequence`` or
    ``Generator``). Requires ``rows >= cols``.
    """
    if rows < cols:
        raise DimensionError(f"need rows >= cols, got ({rows}, {cols})")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(g)
    # Sign fix on R's diagonal makes the distribution Haar and the draw unique.
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d
