"""
Power-law fits of accuracy against complexity.

A power law y = a * x**b is a straight line in log-log space, so the fit is
the closed-form least-squares line through (ln x, ln y) and r2 is measured
there as well. Complexity values can be far too large for a float, which is
why the manifest fit takes log2 x directly.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from archmetrics.algebra.propagation import ComplexityMode, PropagationConfig
from archmetrics.algebra.summary import GlobalMetrics, global_metrics
from archmetrics.errors import FitError
from archmetrics.strings import translation
from archmetrics.utils.workers import ordered_map
from archmetrics.zoo.builders import MODELS
from archmetrics.zoo.manifest import ModelRecord, built_family_subset

logger = logging.getLogger(__name__)

i18n = translation()

MIN_POINTS = 3
LN2 = math.log(2.0)


class XMetric(str, Enum):
    LOG2_GWC = "log2_gwc"
    LOG2_GCC = "log2_gcc"
    GSC = "gsc"


class YMetric(str, Enum):
    TOP1 = "top1"
    TOP5 = "top5"


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    r2: float
    n_points: int
    # None for points supplied by the user
    x_metric: Optional[XMetric] = None
    y_metric: Optional[YMetric] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.r2 <= 1.0:
            raise ValueError(f"r2 must lie in [0, 1], got {self.r2}")
        if self.n_points < MIN_POINTS:
            raise ValueError(f"n_points must be >= {MIN_POINTS}, got {self.n_points}")

    def predict(self, x: float) -> float:
        return self.a * x**self.b

    def to_json(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "b": self.b,
            "r2": self.r2,
            "n_points": self.n_points,
            "x_metric": self.x_metric.value if self.x_metric else None,
            "y_metric": self.y_metric.value if self.y_metric else None,
        }


def _check_count(count: int) -> None:
    if count < MIN_POINTS:
        raise FitError(i18n["fit"]["too_few_points"].format(count=count))


def _fit_logs(
    log_x: np.ndarray,
    log_y: np.ndarray,
    x_metric: Optional[XMetric],
    y_metric: Optional[YMetric],
) -> FitResult:
    mean_x = float(np.mean(log_x))
    mean_y = float(np.mean(log_y))
    dx = log_x - mean_x
    dy = log_y - mean_y
    sxx = float(np.dot(dx, dx))
    if sxx <= 1e-24 * max(1.0, mean_x * mean_x) * len(log_x):
        raise FitError(i18n["fit"]["degenerate_x"])
    b = float(np.dot(dx, dy)) / sxx
    intercept = mean_y - b * mean_x
    residuals = log_y - (intercept + b * log_x)
    ss_res = float(np.dot(residuals, residuals))
    ss_tot = float(np.dot(dy, dy))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(
        a=math.exp(intercept),
        b=b,
        r2=min(1.0, max(0.0, r2)),
        n_points=len(log_x),
        x_metric=XMetric(x_metric) if x_metric else None,
        y_metric=YMetric(y_metric) if y_metric else None,
    )


def fit_power_law(
    points: Sequence[Tuple[float, float]],
    x_metric: Optional[XMetric] = None,
    y_metric: Optional[YMetric] = None,
) -> FitResult:
    """Fit y = a * x**b through points with strictly positive coordinates."""
    _check_count(len(points))
    for x, y in points:
        if not (x > 0 and y > 0):
            raise FitError(i18n["fit"]["non_positive"].format(x=x, y=y))
    log_x = np.log(np.asarray([x for x, _ in points], dtype=float))
    log_y = np.log(np.asarray([y for _, y in points], dtype=float))
    return _fit_logs(log_x, log_y, x_metric, y_metric)


def fit_power_law_log2(
    points: Sequence[Tuple[float, float]],
    x_metric: Optional[XMetric] = None,
    y_metric: Optional[YMetric] = None,
) -> FitResult:
    """Same fit, with every x given as log2 x."""
    _check_count(len(points))
    for log2_x, y in points:
        if not (math.isfinite(log2_x) and y > 0):
            raise FitError(i18n["fit"]["non_positive"].format(x=f"2**{log2_x}", y=y))
    log_x = np.asarray([log2_x for log2_x, _ in points], dtype=float) * LN2
    log_y = np.log(np.asarray([y for _, y in points], dtype=float))
    return _fit_logs(log_x, log_y, x_metric, y_metric)


def spearman(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Spearman's rho, or None when it is undefined (a constant column)."""
    rho, _ = stats.spearmanr(xs, ys)
    return float(rho) if math.isfinite(rho) else None


def log2_x_value(metrics: GlobalMetrics, x_metric: XMetric) -> Optional[float]:
    """log2 of the chosen complexity metric, or None when it is not positive."""
    x_metric = XMetric(x_metric)
    if x_metric is XMetric.LOG2_GWC:
        return metrics.gwc_log2
    if x_metric is XMetric.GSC:
        return math.log2(metrics.gsc) if metrics.gsc > 0 else None
    if metrics.complexity_mode is ComplexityMode.MULTIPLICATIVE:
        return metrics.gcc_log2
    return math.log2(metrics.gcc_log2) if metrics.gcc_log2 > 0 else None


@dataclass(frozen=True)
class FitPoint:
    model: str
    source: str
    key: str
    log2_x: float
    y: float


def manifest_points(
    x_metric: XMetric = XMetric.LOG2_GWC,
    y_metric: YMetric = YMetric.TOP1,
    config: PropagationConfig = PropagationConfig(),
    records: Optional[Sequence[ModelRecord]] = None,
    workers: Optional[int] = None,
) -> List[FitPoint]:
    """One point per manifest row that we can build and that reports y_metric."""
    x_metric = XMetric(x_metric)
    y_metric = YMetric(y_metric)
    subset = [
        (key, record)
        for key, record in built_family_subset(records)
        if getattr(record, y_metric.value) is not None
    ]
    keys = sorted({key for key, _ in subset})
    computed = ordered_map(
        lambda key: global_metrics(MODELS[key](), config), keys, workers
    )
    by_key = dict(zip(keys, computed))

    points = []
    for key, record in subset:
        log2_x = log2_x_value(by_key[key], x_metric)
        if log2_x is None:
            continue
        points.append(
            FitPoint(
                model=record.name,
                source=record.source,
                key=key,
                log2_x=log2_x,
                y=getattr(record, y_metric.value),
            )
        )
    return points


def fit_manifest(
    x_metric: XMetric = XMetric.LOG2_GWC,
    y_metric: YMetric = YMetric.TOP1,
    config: PropagationConfig = PropagationConfig(),
    records: Optional[Sequence[ModelRecord]] = None,
    workers: Optional[int] = None,
) -> Tuple[FitResult, Optional[float], List[FitPoint]]:
    """
    Fit the published accuracies of every model we can build.

    Returns (fit, spearman rho, points).
    """
    points = manifest_points(x_metric, y_metric, config, records, workers)
    if len(points) < MIN_POINTS:
        raise FitError(
            i18n["fit"]["not_enough_records"].format(
                count=len(points), metric=YMetric(y_metric).value
            )
        )
    result = fit_power_law_log2(
        [(point.log2_x, point.y) for point in points], x_metric, y_metric
    )
    rho = spearman([point.log2_x for point in points], [point.y for point in points])
    logger.info(
        f"Fitted {result.n_points} models: {y_metric} = {result.a:.6g} *"
        f" x^{result.b:.6g} (r2 {result.r2:.4f}, spearman {rho})"
    )
    return result, rho, points
