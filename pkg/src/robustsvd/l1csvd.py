"""Robust compact SVD on top of an L1-norm principal component basis.

The left factor U comes from an L1-PCA solver. The singular values and
the right factor are then obtained by alternating between an exhaustive
per-column scale search (L1-optimal for fixed V) and a Procrustes update
of V, driving down the normalized L1 residual

    M_P = ||U^T X - Sigma V^T||_{1,1} / ||U^T X||_{1,1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ContractViolationError,
    DegenerateDirectionError,
    DegenerateInputError,
    DimensionError,
    SingularScaleError,
)
from .l1pca import (
    SOLVERS,
    l1pca_bitflip,
    l1pca_exhaustive,
    l1pca_greedy,
    l1pca_joint,
)
from .linalg import (
    ORTHO_TOL,
    as_matrix,
    as_vector,
    l1_entrywise_norm,
    numerical_rank,
    orthonormality_residual,
    procrustes_orthonormalize,
    random_orthonormal,
)

logger = logging.getLogger(__name__)

# Candidate ratios with |v_j| below this are skipped in the scale search.
EPS_V = 1e-9

# Slack allowed on the per-sweep descent of M_P; the V step is an L2
# Procrustes substitute, so exact monotonicity is not guaranteed.
MP_DESCENT_SLACK = 1e-9

_PCA_SOLVERS = {
    "greedy": l1pca_greedy,
    "joint": l1pca_joint,
    "bitflip": l1pca_bitflip,
}


@dataclass
class L1cSvdOptions:
    """Knobs for :func:`l1_csvd`.

    ``sigma_floor`` is relative: scales with magnitude below
    ``sigma_floor * max|sigma|`` are clamped before inverting Sigma in the
    V update. The outer iteration cap is ``min(N*K, max_outer_iter)``.
    """

    pca_solver: str = "greedy"
    pca_init: str = "svd"
    max_outer_iter: int = 500
    tol: float = 1e-9
    sigma_floor: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.pca_solver not in SOLVERS:
            raise ContractViolationError(
                f"unknown pca_solver {self.pca_solver!r}; expected one of {SOLVERS}"
            )
        if self.max_outer_iter < 1:
            raise ContractViolationError("max_outer_iter must be >= 1")
        if not self.tol > 0:
            raise ContractViolationError("tol must be positive")
        if not self.sigma_floor > 0:
            raise ContractViolationError("sigma_floor must be positive")


@dataclass
class L1cSvdResult:
    """Robust decomposition ``u @ diag(sigma) @ v.T ~= x``.

    ``u`` is the L1-PCA basis (up to column permutation applied during the
    final canonicalization), ``sigma`` is positive descending, and
    ``mp_trace`` records M_P after each scale sweep.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    mp_trace: list[float]
    iterations: int
    converged: bool


def sigma_search(a_col, v_col, eps_v: float = EPS_V) -> tuple[float, float]:
    """L1-optimal scale aligning ``s * v_col`` with ``a_col``.

    Scans the N candidate ratios ``a_j / v_j`` (skipping entries with
    ``|v_j| < eps_v``) and returns the scale with the least L1 error,
    breaking ties toward the smallest ``|s|``. The scale may be negative;
    callers fix signs later.
    """
    a = as_vector(a_col, "a_col")
    v = as_vector(v_col, "v_col")
    if a.shape != v.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {v.size}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise ContractViolationError("v_col must be a unit vector")
    usable = np.abs(v) >= eps_v
    if not np.any(usable):
        raise DegenerateDirectionError("no direction entry exceeds the candidate guard")
    candidates = a[usable] / v[usable]
    errors = np.sum(np.abs(a[:, None] - candidates[None, :] * v[:, None]), axis=0)
    emin = float(errors.min())
    tied = np.flatnonzero(errors == emin)
    winner = tied[np.argmin(np.abs(candidates[tied]))]
    return float(candidates[winner]), emin


def update_v(a, sigma) -> np.ndarray:
    """Orthonormal V from the Procrustes solution on ``a @ inv(diag(sigma))``.

    Raises ``SingularScaleError`` when a scale is too close to zero to
    invert; callers clamp degenerate scales to a floor first.
    """
    a = as_matrix(a, "a")
    sigma = as_vector(sigma, "sigma")
    if sigma.size != a.shape[1]:
        raise DimensionError(f"sigma has {sigma.size} entries for {a.shape[1]} columns")
    if np.any(np.abs(sigma) < 1e-300):
        raise SingularScaleError("scale too close to zero to invert")
    return procrustes_orthonormalize(a / sigma[None, :])


def perf_metric(u, x, sigma, v) -> float:
    """Normalized L1 residual ``||u.T x - diag(sigma) v.T||_{1,1} / ||u.T x||_{1,1}``."""
    u = as_matrix(u, "u")
    x = as_matrix(x, "x")
    sigma = as_vector(sigma, "sigma")
    v = as_matrix(v, "v")
    if u.shape[0] != x.shape[0] or v.shape[0] != x.shape[1] or sigma.size != u.shape[1]:
        raise DimensionError("u, x, sigma, v are not conformable")
    if orthonormality_residual(u) > ORTHO_TOL:
        raise ContractViolationError("u does not have orthonormal columns")
    denom = l1_entrywise_norm(u.T @ x)
    if denom == 0.0:
        raise DegenerateInputError("u.T @ x is identically zero")
    return l1_entrywise_norm(u.T @ x - sigma[:, None] * v.T) / denom


def _canonicalize(u, sigma, v):
    """Flip signs so sigma >= 0, then sort descending, permuting consistently."""
    flip = np.where(sigma < 0.0, -1.0, 1.0)
    sigma = sigma * flip
    v = v * flip
    order = np.argsort(-sigma, kind="stable")
    return u[:, order], sigma[order], v[:, order]


def l1_csvd(x, k: int, opts: L1cSvdOptions | None = None) -> L1cSvdResult:
    """Robust compact SVD retaining the top *k* components.

    U is taken from the configured L1-PCA solver; Sigma and V follow from
    alternating scale searches and Procrustes updates started at a seeded
    random orthonormal V. Terminates when the relative change of M_P drops
    below ``opts.tol`` or at the outer iteration cap; the result is
    canonicalized to positive descending scales.
    """
    x = as_matrix(x, "x")
    opts = opts or L1cSvdOptions()
    if k < 1:
        raise DimensionError(f"k must be >= 1, got {k}")
    rank = numerical_rank(x)
    if k > rank:
        raise DimensionError(f"k={k} exceeds numerical rank {rank} of the input")
    n = x.shape[1]

    seed_seq = np.random.SeedSequence(opts.seed)
    pca_seed, v_seed = seed_seq.spawn(2)
    solver = _PCA_SOLVERS.get(opts.pca_solver)
    if solver is not None:
        pca = solver(x, k, init=opts.pca_init, seed=np.random.default_rng(pca_seed))
    else:
        pca = l1pca_exhaustive(x, k)
    u = pca.q

    a = x.T @ u
    denom = l1_entrywise_norm(a)
    if denom == 0.0:
        raise DegenerateInputError("projection of the data on the basis is zero")

    v = random_orthonormal(n, k, v_seed)
    sigma = np.zeros(k)
    mp_trace: list[float] = []
    converged = False
    ascent_count = 0
    worst_ascent = 0.0
    cap = min(n * k, opts.max_outer_iter)
    for _ in range(cap):
        total_err = 0.0
        for i in range(k):
            try:
                sigma[i], err = sigma_search(a[:, i], v[:, i])
            except DegenerateDirectionError as exc:
                raise DegenerateDirectionError(f"column {i}: {exc}") from exc
            total_err += err
        mp = total_err / denom
        if mp_trace:
            prev = mp_trace[-1]
            # The V step is an L2 surrogate, so M_P may rise between sweeps.
            if len(mp_trace) >= 2 and mp > prev + MP_DESCENT_SLACK:
                ascent_count += 1
                worst_ascent = max(worst_ascent, mp - prev)
            mp_trace.append(mp)
            if abs(mp - prev) / max(mp, 1e-15) < opts.tol:
                converged = True
                break
        else:
            mp_trace.append(mp)
        max_mag = float(np.max(np.abs(sigma)))
        if max_mag == 0.0:
            raise SingularScaleError("all scales collapsed to zero")
        floor = opts.sigma_floor * max_mag
        clamped = np.where(np.abs(sigma) < floor, np.copysign(floor, sigma), sigma)
        v = update_v(a, clamped)
    if ascent_count:
        logger.warning(
            "M_P rose on %d of %d sweeps (worst ascent %.3e); the Procrustes V step is not an L1 descent step",
            ascent_count,
            len(mp_trace),
            worst_ascent,
        )

    u, sigma, v = _canonicalize(u, sigma.copy(), v)
    return L1cSvdResult(
        u=u,
        sigma=sigma,
        v=v,
        mp_trace=mp_trace,
        iterations=len(mp_trace),
        converged=converged,
    )
