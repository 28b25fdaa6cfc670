"""Data-driven estimates of activation and convolution power, with oracles."""
from archmetrics.estimators.activations import (  # noqa: F401
    activation_variance_sweep,
    estimate_activation_power,
)
from archmetrics.estimators.boxfilter import (  # noqa: F401
    BoxFilterCurve,
    BoxFilterRow,
    boxfilter_experiment,
)
from archmetrics.estimators.oracles import (  # noqa: F401
    activation_power_oracle,
    softmax_power_oracle,
)
from archmetrics.estimators.sampling import (  # noqa: F401
    Distribution,
    EstimateResult,
    Statistic,
)
from archmetrics.estimators.softmax import softmax_power_estimate  # noqa: F401
