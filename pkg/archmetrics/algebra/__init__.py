"""Layer algebra: cumulative and global properties of a whole graph."""
from archmetrics.algebra.propagation import (  # noqa: F401
    ComplexityMode,
    CumulativeState,
    PowerMerge,
    PropagationConfig,
    cumulative_state,
    propagate_complexity,
    propagate_power,
)
from archmetrics.algebra.summary import (  # noqa: F401
    CURVE_HEADER,
    CurveRow,
    GlobalMetrics,
    cumulative_curves,
    global_metrics,
    global_sum,
)
