"""Solvers for L1-norm principal component analysis.

The objective is the projection maximization

    maximize ||Q^T X||_{1,1}  over orthonormal Q (D x K),

an outlier-resistant replacement for the L2 objective that standard SVD
solves. Three iterative solvers are provided (greedy deflation, joint
alternation, single-bit flipping) plus a brute-force global oracle for
small single-component instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    CapacityError,
    ContractViolationError,
    DegenerateInputError,
    DimensionError,
    RankError,
)
from .linalg import (
    ORTHO_TOL,
    as_matrix,
    compact_svd,
    l1_entrywise_norm,
    numerical_rank,
    orthonormality_residual,
    procrustes_orthonormalize,
    sign_matrix,
)

SOLVERS = ("greedy", "joint", "bitflip", "exhaustive")
INIT_POLICIES = ("svd", "random")

# Exhaustive enumeration guard: 2^N candidate sign vectors.
EXHAUSTIVE_MAX_N = 20


@dataclass
class L1PcaResult:
    """Orthonormal basis plus the achieved projection metric.

    ``metric`` is ``||q.T @ x||_{1,1}`` recomputed from the returned basis.
    ``metric_trace`` holds the solver's internal objective per iteration
    (nuclear norm of X@B for the bit-flipping solver, the projection
    metric for the joint solver; empty for greedy and exhaustive).
    """

    q: np.ndarray
    metric: float
    iterations: int
    solver: str
    converged: bool = True
    metric_trace: list[float] = field(default_factory=list)


def _sgn(z: np.ndarray) -> np.ndarray:
    return np.where(z >= 0.0, 1.0, -1.0)


def _check_k(x: np.ndarray, k: int) -> None:
    if k < 1:
        raise DimensionError(f"k must be >= 1, got {k}")
    r = numerical_rank(x)
    if k > r:
        raise RankError(f"k={k} exceeds numerical rank {r} of the input")


def _init_binary(x: np.ndarray, k: int, init, rng: np.random.Generator) -> np.ndarray:
    """Initial antipodal binary matrix B (N x k)."""
    n = x.shape[1]
    if isinstance(init, np.ndarray):
        b = np.asarray(init, dtype=np.float64)
        if b.shape != (n, k):
            raise DimensionError(f"explicit init must have shape ({n}, {k}), got {b.shape}")
        if not np.all(np.abs(b) == 1.0):
            raise ContractViolationError("explicit init must have +/-1 entries")
        return b.copy()
    if init == "svd":
        u = compact_svd(x, k).u
        return _sgn(x.T @ u)
    if init == "random":
        return rng.choice([-1.0, 1.0], size=(n, k))
    raise ContractViolationError(f"unknown init policy {init!r}; expected one of {INIT_POLICIES}")


def _greedy_component(xc: np.ndarray, init: str, max_iter: int, rng: np.random.Generator):
    """Fixed point of b <- sgn(Xc^T Xc b); returns (q, iterations, converged)."""
    b = _init_binary(xc, 1, init, rng)[:, 0]
    g = xc.T @ xc
    best_b = b
    best_val = float(np.linalg.norm(xc @ b))
    iterations = 0
    converged = False
    for _ in range(max_iter):
        b_new = _sgn(g @ b)
        if np.array_equal(b_new, b):
            converged = True
            break
        iterations += 1
        b = b_new
        val = float(np.linalg.norm(xc @ b))
        if val > best_val:
            best_val = val
            best_b = b
    norm = float(np.linalg.norm(xc @ best_b))
    if norm == 0.0:
        raise DegenerateInputError("binary combination fell in the nullspace of the data")
    q = (xc @ best_b) / norm
    return q, iterations, converged


def l1pca_greedy(x, k: int, init="svd", max_iter: int = 1000, seed=None) -> L1PcaResult:
    """Greedy L1-PCA: one component at a time with nullspace deflation.

    Each component is the fixed point of ``b <- sgn(X^T X b)`` followed by
    ``q = X b / ||X b||``; the data is then projected onto the orthogonal
    complement of the components found so far. A cycling fixed point is cut
    off at *max_iter* sign updates and the best iterate is kept, with
    ``converged=False`` on the result.
    """
    x = as_matrix(x, "x")
    _check_k(x, k)
    rng = np.random.default_rng(seed)
    xc = x.copy()
    columns = []
    iterations = 0
    converged = True
    for _ in range(k):
        q, iters, conv = _greedy_component(xc, init, max_iter, rng)
        columns.append(q)
        iterations += iters
        converged = converged and conv
        xc = xc - np.outer(q, q @ xc)
    q_full = np.column_stack(columns)
    return L1PcaResult(
        q=q_full,
        metric=l1_entrywise_norm(q_full.T @ x),
        iterations=iterations,
        solver="greedy",
        converged=converged,
    )


def l1pca_joint(x, k: int, init="svd", max_iter: int = 1000, seed=None) -> L1PcaResult:
    """Joint L1-PCA: alternate ``B <- sgn(X^T Q)`` and ``Q <- Procrustes(X B)``.

    All K components are updated together, so the projection metric is
    non-decreasing across iterations. Stops when B repeats, when the metric
    improves by less than 1e-12, or at *max_iter*.
    """
    x = as_matrix(x, "x")
    _check_k(x, k)
    rng = np.random.default_rng(seed)
    b = _init_binary(x, k, init, rng)
    q = procrustes_orthonormalize(x @ b)
    metric = l1_entrywise_norm(q.T @ x)
    trace = [metric]
    iterations = 0
    converged = False
    for _ in range(max_iter):
        b_new = sign_matrix(x.T @ q)
        if np.array_equal(b_new, b):
            converged = True
            break
        q_new = procrustes_orthonormalize(x @ b_new)
        metric_new = l1_entrywise_norm(q_new.T @ x)
        if metric_new - metric < 1e-12:
            # At noise level; keep the previous iterate so the trace stays monotone.
            converged = True
            break
        b, q, metric = b_new, q_new, metric_new
        trace.append(metric)
        iterations += 1
    return L1PcaResult(
        q=q,
        metric=l1_entrywise_norm(q.T @ x),
        iterations=iterations,
        solver="joint",
        converged=converged,
        metric_trace=trace,
    )


def _nuclear_norms_after_flips(x: np.ndarray, xb: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Nuclear norm of X@B after each possible single-bit flip, as an N-by-K grid."""
    n, k = b.shape
    vals = np.empty((n, k))
    for c in range(k):
        batch = np.repeat(xb[None, :, :], n, axis=0)
        # Flipping B[j, c] changes column c of X@B by -2 B[j, c] x_j.
        batch[:, :, c] -= 2.0 * b[:, c][:, None] * x.T
        svals = np.linalg.svd(batch, compute_uv=False)
        vals[:, c] = svals.sum(axis=1)
    return vals


def l1pca_bitflip(x, k: int, init="svd", max_iter: int = 1000, seed=None) -> L1PcaResult:
    """Bit-flipping L1-PCA over the antipodal binary matrix B.

    Evaluates the nuclear norm of X@B after every single-bit flip, applies
    the best strictly improving one (ties broken by lowest (row, column)),
    and stops at a local maximum. The basis is the Procrustes
    orthonormalization of X@B.
    """
    x = as_matrix(x, "x")
    _check_k(x, k)
    rng = np.random.default_rng(seed)
    b = _init_binary(x, k, init, rng)
    xb = x @ b
    current = float(np.linalg.svd(xb, compute_uv=False).sum())
    trace = [current]
    flips = 0
    converged = False
    for _ in range(max_iter):
        vals = _nuclear_norms_after_flips(x, xb, b)
        flat = np.argmax(vals)  # row-major: lowest (row, column) wins ties
        j, c = divmod(int(flat), k)
        if vals[j, c] <= current:
            converged = True
            break
        xb[:, c] -= 2.0 * b[j, c] * x[:, j]
        b[j, c] = -b[j, c]
        current = float(vals[j, c])
        trace.append(current)
        flips += 1
    q = procrustes_orthonormalize(x @ b)
    return L1PcaResult(
        q=q,
        metric=l1_entrywise_norm(q.T @ x),
        iterations=flips,
        solver="bitflip",
        converged=converged,
        metric_trace=trace,
    )


def _sign_patterns(indices: np.ndarray, n: int) -> np.ndarray:
    """Antipodal vectors for enumeration *indices*, lexicographic with -1 < +1."""
    shifts = n - 1 - np.arange(n)
    bits = (indices[:, None] >> shifts[None, :]) & 1
    return 2.0 * bits - 1.0


def l1pca_exhaustive(x, k: int = 1) -> L1PcaResult:
    """Globally optimal single L1 principal component by enumeration.

    Maximizes ``||X b||_2`` over all 2^N antipodal b (equivalent to the
    K=1 projection maximization); ties go to the lexicographically first b.
    Guarded to N <= 20 columns and K = 1.
    """
    x = as_matrix(x, "x")
    if k != 1:
        raise DimensionError(f"exhaustive oracle only supports k=1, got k={k}")
    _check_k(x, k)
    n = x.shape[1]
    if n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"N={n} exceeds the exhaustive guard of {EXHAUSTIVE_MAX_N}")
    gram = x.T @ x
    best_energy = -1.0
    best_b = None
    chunk = 1 << 16
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        patterns = _sign_patterns(idx, n)
        energies = np.einsum("ij,ij->i", patterns @ gram, patterns)
        local = int(np.argmax(energies))
        if energies[local] > best_energy:
            best_energy = float(energies[local])
            best_b = patterns[local]
    norm = float(np.linalg.norm(x @ best_b))
    if norm == 0.0:
        raise DegenerateInputError("all sign combinations fall in the nullspace of the data")
    q = ((x @ best_b) / norm)[:, None]
    return L1PcaResult(
        q=q,
        metric=l1_entrywise_norm(q.T @ x),
        iterations=0,
        solver="exhaustive",
    )


def l1_metric(q, x) -> float:
    """Projection metric ``||q.T @ x||_{1,1}`` for an orthonormal basis q."""
    q = as_matrix(q, "q")
    x = as_matrix(x, "x")
    if q.shape[0] != x.shape[0]:
        raise DimensionError(f"q has {q.shape[0]} rows but x has {x.shape[0]}")
    if orthonormality_residual(q) > ORTHO_TOL:
        raise ContractViolationError("q does not have orthonormal columns")
    return l1_entrywise_norm(q.T @ x)
