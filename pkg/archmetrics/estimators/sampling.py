import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

SQRT3 = math.sqrt(3.0)


class Distribution(str, Enum):
    STANDARD_NORMAL = "standard_normal"
    # symmetric uniform with unit variance: U(-sqrt(3), sqrt(3))
    UNIFORM_SYM = "uniform_sym"


class Statistic(str, Enum):
    STD_RATIO = "std_ratio"
    VAR_RATIO = "var_ratio"


@dataclass(frozen=True)
class EstimateResult:
    estimate: float
    std_error: float
    n_samples: int
    distribution: Distribution
    statistic: Statistic

    def __post_init__(self) -> None:
        if self.std_error < 0:
            raise ValueError(f"std_error must be >= 0, got {self.std_error}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")

    def to_json(self) -> Dict[str, Any]:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "n_samples": self.n_samples,
            "distribution": Distribution(self.distribution).value,
            "statistic": Statistic(self.statistic).value,
        }


def draw(
    distribution: Distribution,
    rng: np.random.Generator,
    size: Any,
    variance: float = 1.0,
) -> np.ndarray:
    """Zero-mean samples with the requested variance."""
    scale = math.sqrt(variance)
    if Distribution(distribution) is Distribution.UNIFORM_SYM:
        return rng.uniform(-SQRT3 * scale, SQRT3 * scale, size=size)
    return rng.standard_normal(size=size) * scale


def spawn_generators(seed: int, count: int) -> List[np.random.Generator]:
    """
    Independent generators for `count` replicates.

    Replicate r always gets the same stream for a given seed, whatever order
    the replicates end up running in.
    """
    return [
        np.random.default_rng(child)
        for child in np.random.SeedSequence(seed).spawn(count)
    ]


def split_sizes(total: int, parts: int) -> List[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if index < extra else 0) for index in range(parts)]


def mean_and_error(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and standard error of replicate values, reduced pairwise by numpy."""
    array = np.asarray(values, dtype=float)
    mean = float(np.mean(array))
    if array.size < 2:
        return mean, 0.0
    return mean, float(np.std(array, ddof=1) / math.sqrt(array.size))


def ratio(values_out: np.ndarray, values_in: np.ndarray, statistic: Statistic) -> float:
    variance = float(np.var(values_out)) / float(np.var(values_in))
    if Statistic(statistic) is Statistic.STD_RATIO:
        return math.sqrt(variance)
    return variance
