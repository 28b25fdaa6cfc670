"""Library half of the command line: comparisons, fits, VC bounds, reports."""
from archmetrics.analysis.compare import (  # noqa: F401
    COMPARE_HEADER,
    ComparisonRow,
    compare_models,
)
from archmetrics.analysis.fitting import (  # noqa: F401
    FitResult,
    XMetric,
    YMetric,
    fit_manifest,
    fit_power_law,
    fit_power_law_log2,
    spearman,
)
from archmetrics.analysis.reports import dump_json, export_csv  # noqa: F401
from archmetrics.analysis.vc import VC_HEADER, VcRow, vc_bound, vc_sweep  # noqa: F401
