import logging
import math
from typing import Optional

import numpy as np
from scipy.special import softmax

from archmetrics import settings
from archmetrics.errors import DegenerateSampleError, EstimatorError
from archmetrics.estimators.sampling import (
    Distribution,
    EstimateResult,
    Statistic,
    mean_and_error,
)
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()


def _draw_inputs(
    rng: np.random.Generator, n_trials: int, vector_len: int
) -> np.ndarray:
    return rng.standard_normal((n_trials, vector_len))


def softmax_power_estimate(
    vector_len: Optional[int] = None,
    n_trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> EstimateResult:
    """
    Std ratio of softmax outputs to standard normal inputs.

    All trials are concatenated before taking the ratio; the standard error
    comes from the spread of the per-trial ratios. The value shrinks like
    1 / vector_len.
    """
    vector_len = settings.SOFTMAX_VECTOR_LEN if vector_len is None else vector_len
    n_trials = settings.SOFTMAX_TRIALS if n_trials is None else n_trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    if vector_len < 2:
        raise EstimatorError(
            i18n["estimators"]["softmax_len"].format(vector_len=vector_len)
        )
    if n_trials < 1:
        raise EstimatorError(i18n["estimators"]["bad_trials"].format(n_trials=n_trials))

    inputs = _draw_inputs(np.random.default_rng(seed), n_trials, vector_len)
    outputs = softmax(inputs, axis=1)
    spread_in = float(np.std(inputs))
    if spread_in == 0.0:
        raise DegenerateSampleError(i18n["estimators"]["degenerate"])
    estimate = float(np.std(outputs)) / spread_in

    per_trial_in = np.std(inputs, axis=1)
    per_trial = np.divide(
        np.std(outputs, axis=1),
        per_trial_in,
        out=np.zeros(n_trials),
        where=per_trial_in > 0,
    )
    _, std_error = mean_and_error(per_trial)
    logger.debug(
        f"softmax over {n_trials} vectors of {vector_len}: {estimate:.4g}"
        f" (delta method {math.sqrt(math.e - 1) / vector_len:.4g})"
    )
    return EstimateResult(
        estimate=estimate,
        std_error=std_error,
        n_samples=n_trials * vector_len,
        distribution=Distribution.STANDARD_NORMAL,
        statistic=Statistic.STD_RATIO,
    )
