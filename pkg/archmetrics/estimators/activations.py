"""
Monte-Carlo estimates of how much signal an activation lets through.

Samples are drawn from a zero-mean distribution, pushed through the
activation, and the output spread is compared with the input spread.
"""
import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from archmetrics import settings
from archmetrics.errors import DegenerateSampleError, EstimatorError
from archmetrics.estimators.functions import ELEMENTWISE
from archmetrics.estimators.sampling import (
    Distribution,
    EstimateResult,
    Statistic,
    draw,
    mean_and_error,
    ratio,
    spawn_generators,
    split_sizes,
)
from archmetrics.graph.models import ActivationFn
from archmetrics.strings import translation
from archmetrics.utils.workers import ordered_map

logger = logging.getLogger(__name__)

i18n = translation()

MIN_SAMPLES = 1000
# every replicate needs enough draws for a meaningful variance
MIN_REPLICATE_SAMPLES = 500

DEFAULT_SWEEP_VARIANCES = tuple(round(0.25 * step, 2) for step in range(1, 17))


def _elementwise(fn: ActivationFn) -> Callable[[np.ndarray], np.ndarray]:
    fn = ActivationFn(fn)
    if fn not in ELEMENTWISE:
        raise EstimatorError(i18n["estimators"]["not_elementwise"].format(fn=fn.value))
    return ELEMENTWISE[fn]


def estimate_activation_power(
    fn: ActivationFn,
    distribution: Distribution = Distribution.STANDARD_NORMAL,
    statistic: Statistic = Statistic.STD_RATIO,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    replicates: Optional[int] = None,
    workers: int = 1,
) -> EstimateResult:
    """
    Estimate the output/input spread ratio of an activation.

    The sample is split into independent replicates; the estimate is their
    mean and the standard error comes from their spread. The result only
    depends on the arguments and the seed.
    """
    n_samples = settings.ESTIMATOR_SAMPLES if n_samples is None else n_samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    replicates = settings.ESTIMATOR_REPLICATES if replicates is None else replicates
    if n_samples < MIN_SAMPLES:
        raise EstimatorError(
            i18n["estimators"]["too_few_samples"].format(
                minimum=MIN_SAMPLES, n_samples=n_samples
            )
        )
    func = _elementwise(fn)
    distribution = Distribution(distribution)
    statistic = Statistic(statistic)
    replicates = max(1, min(replicates, n_samples // MIN_REPLICATE_SAMPLES))

    jobs = list(
        zip(spawn_generators(seed, replicates), split_sizes(n_samples, replicates))
    )

    def run(job: Tuple[np.random.Generator, int]) -> float:
        rng, size = job
        values_in = draw(distribution, rng, size)
        if float(np.var(values_in)) == 0.0:
            raise DegenerateSampleError(i18n["estimators"]["degenerate"])
        return ratio(func(values_in), values_in, statistic)

    estimate, std_error = mean_and_error(ordered_map(run, jobs, workers))
    logger.debug(
        f"{ActivationFn(fn).value} {statistic.value} under {distribution.value}:"
        f" {estimate:.6f} +/- {std_error:.2g} ({replicates} replicates)"
    )
    return EstimateResult(
        estimate=estimate,
        std_error=std_error,
        n_samples=n_samples,
        distribution=distribution,
        statistic=statistic,
    )


def activation_variance_sweep(
    fn: ActivationFn,
    distribution: Distribution = Distribution.STANDARD_NORMAL,
    input_vars: Sequence[float] = DEFAULT_SWEEP_VARIANCES,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[Tuple[float, float]]:
    """Output variance of the activation for each requested input variance."""
    n_samples = settings.ESTIMATOR_SAMPLES if n_samples is None else n_samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    if n_samples < MIN_SAMPLES:
        raise EstimatorError(
            i18n["estimators"]["too_few_samples"].format(
                minimum=MIN_SAMPLES, n_samples=n_samples
            )
        )
    func = _elementwise(fn)
    rows = []
    for rng, variance in zip(spawn_generators(seed, len(input_vars)), input_vars):
        if not variance > 0:
            raise EstimatorError(
                i18n["estimators"]["bad_variance"].format(value=variance)
            )
        values_in = draw(distribution, rng, n_samples, variance=variance)
        rows.append((float(variance), float(np.var(func(values_in)))))
    return rows
