"""Per-layer intrinsic power and complexity, and parameter counting."""
from archmetrics.metrics.constants import (  # noqa: F401
    DEFAULT_CONSTANTS,
    ActivationConstant,
    ActivationConstants,
    load_constants,
)
from archmetrics.metrics.local import (  # noqa: F401
    KernelScope,
    LocalMetrics,
    MetricsConfig,
    activation_metrics,
    conv_metrics,
    dense_metrics,
    global_pool_metrics,
    local_metrics,
    neutral_metrics,
    node_metrics,
    pool_metrics,
    transpose_conv_metrics,
)
from archmetrics.metrics.params import count_params  # noqa: F401
