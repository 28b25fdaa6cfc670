"""
Box-filter experiment: how much variance survives a 1-D mean filter.

Every vector is standard normal and the kernel is 1/K everywhere, so the
output variance should follow S_o / (K * S_i), the convolution power formula
for one filter.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from archmetrics import settings
from archmetrics.errors import EstimatorError
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

CURVE_HEADER = ("K", "var_ratio", "p_formula")


@dataclass(frozen=True)
class BoxFilterRow:
    K: int  # noqa: N815
    var_ratio: float
    p_formula: float
    std_error: float = 0.0

    def as_tuple(self) -> Tuple[int, float, float]:
        return self.K, self.var_ratio, self.p_formula


@dataclass(frozen=True)
class BoxFilterCurve:
    rows: Tuple[BoxFilterRow, ...]
    # variance of the first input vector; plots scale the formula curve by it
    reference_variance: float

    def __post_init__(self) -> None:
        sizes = [row.K for row in self.rows]
        if sizes != list(range(1, len(sizes) + 1)):
            raise ValueError("box-filter rows must cover K = 1..k_max contiguously")

    def row(self, kernel_size: int) -> BoxFilterRow:
        return self.rows[kernel_size - 1]


def boxfilter_experiment(
    vector_len: Optional[int] = None,
    n_vectors: Optional[int] = None,
    k_max: Optional[int] = None,
    seed: Optional[int] = None,
) -> BoxFilterCurve:
    """Run the mean filter for every K in 1..k_max over the same random vectors."""
    vector_len = settings.BOXFILTER_VECTOR_LEN if vector_len is None else vector_len
    n_vectors = settings.BOXFILTER_VECTORS if n_vectors is None else n_vectors
    k_max = settings.BOXFILTER_K_MAX if k_max is None else k_max
    seed = settings.DEFAULT_SEED if seed is None else seed
    if not vector_len >= k_max >= 1 or n_vectors < 1:
        raise EstimatorError(
            i18n["estimators"]["boxfilter_args"].format(
                vector_len=vector_len, k_max=k_max
            )
        )

    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((n_vectors, vector_len))
    var_in = vectors.var(axis=1)
    # prefix sums turn every window mean into one subtraction
    prefix = np.cumsum(np.pad(vectors, ((0, 0), (1, 0))), axis=1)

    rows = []
    for size in range(1, k_max + 1):
        filtered = (prefix[:, size:] - prefix[:, :-size]) / size
        ratios = filtered.var(axis=1) / var_in
        std_error = 0.0
        if n_vectors > 1:
            std_error = float(np.std(ratios, ddof=1) / np.sqrt(n_vectors))
        rows.append(
            BoxFilterRow(
                K=size,
                var_ratio=float(np.mean(ratios)),
                p_formula=(vector_len - size + 1) / (size * vector_len),
                std_error=std_error,
            )
        )
    logger.debug(f"Box-filter experiment over {n_vectors}x{vector_len}, K <= {k_max}")
    return BoxFilterCurve(rows=tuple(rows), reference_variance=float(var_in[0]))
