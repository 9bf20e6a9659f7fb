"""Principal component pursuit by inexact augmented Lagrangian.

Splits a matrix into a low-rank part L and a sparse part S by minimizing
``||L||_* + lambda * ||S||_{1,1}`` subject to ``L + S = X``. Singular
values robust to sparse corruption are then read off the SVD of L.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import CompactSvd, as_matrix, compact_svd

# Inexact-ALM schedule: initial penalty scale, growth factor, and cap.
MU_FACTOR = 1.25
RHO = 1.5
MU_MAX_FACTOR = 1e7


@dataclass
class RpcaResult:
    """Low-rank plus sparse split with solver diagnostics.

    ``objective_trace`` records ``||L||_* + lambda*||S||_{1,1}`` after each
    iteration.
    """

    l: np.ndarray
    s: np.ndarray
    lam: float
    iterations: int
    converged: bool
    objective_trace: list[float] = field(default_factory=list)


def soft_threshold(m, tau: float) -> np.ndarray:
    """Entrywise shrink ``sgn(m) * max(|m| - tau, 0)``."""
    m = as_matrix(m, "m")
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    return np.sign(m) * np.maximum(np.abs(m) - tau, 0.0)


def sv_threshold(m, tau: float) -> np.ndarray:
    """Shrink the singular values of *m* by *tau*, dropping those below it."""
    m = as_matrix(m, "m")
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    s = np.maximum(s - tau, 0.0)
    return (u * s) @ vt


def rpca_pcp(x, lam: float | None = None, tol: float = 1e-7, max_iter: int = 1000) -> RpcaResult:
    """Split ``x = L + S`` with low-rank L and sparse S.

    Inexact augmented Lagrangian iteration: singular value thresholding on
    L, entrywise soft thresholding on S, dual ascent on the multiplier.
    ``lam`` defaults to ``1/sqrt(max(x.shape))``. Stops when the relative
    Frobenius residual of ``x - L - S`` falls below *tol*.
    """
    x = as_matrix(x, "x")
    if lam is None:
        lam = 1.0 / np.sqrt(max(x.shape))
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")

    x_fro = float(np.linalg.norm(x))
    if x_fro == 0.0:
        return RpcaResult(
            l=np.zeros_like(x), s=np.zeros_like(x), lam=lam, iterations=0, converged=True
        )

    norm_two = float(np.linalg.svd(x, compute_uv=False)[0])
    dual_norm = max(norm_two, float(np.max(np.abs(x))) / lam)
    y = x / dual_norm
    mu = MU_FACTOR / norm_two
    mu_max = mu * MU_MAX_FACTOR

    l = np.zeros_like(x)
    s = np.zeros_like(x)
    trace: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        u, sig, vt = np.linalg.svd(x - s + y / mu, full_matrices=False)
        sig = np.maximum(sig - 1.0 / mu, 0.0)
        l = (u * sig) @ vt
        s = soft_threshold(x - l + y / mu, lam / mu)
        residual = x - l - s
        y = y + mu * residual
        mu = min(mu * RHO, mu_max)
        trace.append(float(sig.sum() + lam * np.sum(np.abs(s))))
        if float(np.linalg.norm(residual)) / x_fro < tol:
            converged = True
            break

    return RpcaResult(
        l=l, s=s, lam=lam, iterations=iterations, converged=converged, objective_trace=trace
    )


def rpca_svd(x, k: int, lam: float | None = None, tol: float = 1e-7, max_iter: int = 1000) -> CompactSvd:
    """Compact SVD of the low-rank component extracted by :func:`rpca_pcp`."""
    result = rpca_pcp(x, lam=lam, tol=tol, max_iter=max_iter)
    return compact_svd(result.l, k)
