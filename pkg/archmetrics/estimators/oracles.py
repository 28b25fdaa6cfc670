"""Independent reference values for the Monte-Carlo estimators."""
import math

from scipy import integrate, stats

from archmetrics.errors import EstimatorError
from archmetrics.estimators.functions import ELEMENTWISE
from archmetrics.estimators.sampling import SQRT3, Distribution, Statistic
from archmetrics.graph.models import ActivationFn
from archmetrics.strings import translation

i18n = translation()

QUAD_TOLERANCE = 1e-10


def _moment(func: object, power: int, distribution: Distribution) -> float:
    if distribution is Distribution.UNIFORM_SYM:
        density = 1 / (2 * SQRT3)
        value, _ = integrate.quad(
            lambda x: float(func(x)) ** power * density,
            -SQRT3,
            SQRT3,
            epsabs=QUAD_TOLERANCE,
        )
        return value
    value, _ = integrate.quad(
        lambda x: float(func(x)) ** power * stats.norm.pdf(x),
        -math.inf,
        math.inf,
        epsabs=QUAD_TOLERANCE,
    )
    return value


def activation_power_oracle(
    fn: ActivationFn,
    statistic: Statistic = Statistic.STD_RATIO,
    distribution: Distribution = Distribution.STANDARD_NORMAL,
) -> float:
    """
    Exact output/input spread ratio for a unit-variance input.

    ReLU under a standard normal has the closed form 1/2 - 1/(2*pi); the other
    element-wise activations are integrated numerically.
    """
    fn = ActivationFn(fn)
    distribution = Distribution(distribution)
    if fn not in ELEMENTWISE:
        raise EstimatorError(
            i18n["estimators"]["unsupported_oracle"].format(fn=fn.value)
        )
    if fn is ActivationFn.RELU and distribution is Distribution.STANDARD_NORMAL:
        variance = 0.5 - 1 / (2 * math.pi)
    else:
        func = ELEMENTWISE[fn]
        mean = _moment(func, 1, distribution)
        variance = _moment(func, 2, distribution) - mean * mean
    if Statistic(statistic) is Statistic.STD_RATIO:
        return math.sqrt(variance)
    return variance


def softmax_power_oracle(vector_len: int) -> float:
    """
    Delta-method value of the softmax std ratio for standard normal inputs.

    Each output is about e^Z / (n * sqrt(e)) and Var(e^Z) = e^2 - e, which
    leaves sqrt(e - 1) / n.
    """
    if vector_len < 2:
        raise EstimatorError(
            i18n["estimators"]["softmax_len"].format(vector_len=vector_len)
        )
    return math.sqrt(math.e - 1) / vector_len
