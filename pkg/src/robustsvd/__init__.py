"""Outlier-robust singular value estimation toolkit."""

from .exceptions import (
    CapacityError,
    ContractViolationError,
    ConvergenceError,
    DataError,
    DegenerateDirectionError,
    DegenerateInputError,
    DimensionError,
    RankError,
    RobustSvdError,
    SingularScaleError,
)
from .l1csvd import L1cSvdOptions, L1cSvdResult, l1_csvd, perf_metric, sigma_search, update_v
from .l1pca import (
    L1PcaResult,
    l1_metric,
    l1pca_bitflip,
    l1pca_exhaustive,
    l1pca_greedy,
    l1pca_joint,
)
from .linalg import (
    CompactSvd,
    compact_svd,
    l1_entrywise_norm,
    procrustes_orthonormalize,
    random_orthonormal,
    realify,
    sign_matrix,
)
from .matio import read_matrix_csv, write_matrix_csv
from .rpca import RpcaResult, rpca_pcp, rpca_svd, soft_threshold, sv_threshold

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CompactSvd",
    "ContractViolationError",
    "ConvergenceError",
    "DataError",
    "DegenerateDirectionError",
    "DegenerateInputError",
    "DimensionError",
    "L1PcaResult",
    "L1cSvdOptions",
    "L1cSvdResult",
    "RankError",
    "RobustSvdError",
    "RpcaResult",
    "SingularScaleError",
    "compact_svd",
    "l1_csvd",
    "l1_entrywise_norm",
    "l1_metric",
    "l1pca_bitflip",
    "l1pca_exhaustive",
    "l1pca_greedy",
    "l1pca_joint",
    "perf_metric",
    "procrustes_orthonormalize",
    "random_orthonormal",
    "read_matrix_csv",
    "realify",
    "rpca_pcp",
    "rpca_svd",
    "sigma_search",
    "sign_matrix",
    "soft_threshold",
    "sv_threshold",
    "update_v",
    "write_matrix_csv",
]
