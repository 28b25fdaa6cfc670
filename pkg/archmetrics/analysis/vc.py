import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from archmetrics.algebra.propagation import PropagationConfig
from archmetrics.algebra.summary import global_metrics
from archmetrics.errors import ArchMetricsError
from archmetrics.metrics.params import count_params
from archmetrics.strings import translation
from archmetrics.zoo.builders import build_mlp

logger = logging.getLogger(__name__)

i18n = translation()

SWEEP_WIDTHS = tuple(2**power for power in range(4, 11))
SWEEP_LAYERS = (2, 3, 4, 5)

VC_HEADER = ("width", "layers", "params", "vc_bound", "log2_gcc", "ratio")


def vc_bound(weights: int, layers: int) -> float:
    """W * L * log2(W), the nearly tight VC bound for piecewise-linear nets."""
    if weights < 2:
        raise ArchMetricsError(i18n["vc"]["bad_weights"].format(weights=weights))
    if layers < 1:
        raise ArchMetricsError(i18n["vc"]["bad_layers"].format(layers=layers))
    return weights * layers * math.log2(weights)


@dataclass(frozen=True)
class VcRow:
    width: int
    layers: int
    params: int
    vc_bound: float
    gcc_log2: float
    ratio: Optional[float]

    def as_tuple(self) -> Tuple[int, int, int, float, float, Optional[float]]:
        return (
            self.width,
            self.layers,
            self.params,
            self.vc_bound,
            self.gcc_log2,
            self.ratio,
        )


def vc_sweep(
    widths: Sequence[int] = SWEEP_WIDTHS,
    layer_counts: Sequence[int] = SWEEP_LAYERS,
    config: PropagationConfig = PropagationConfig(),
) -> List[VcRow]:
    """
    Compare the VC bound with the cumulative complexity on square MLPs.

    Every MLP has `layers` Dense layers of the same width as its input.
    """
    rows = []
    for layers in layer_counts:
        for width in widths:
            graph = build_mlp([width] * (layers + 1))
            params = count_params(graph)
            bound = vc_bound(params, layers)
            gcc_log2 = global_metrics(graph, config).gcc_log2
            rows.append(
                VcRow(
                    width=width,
                    layers=layers,
                    params=params,
                    vc_bound=bound,
                    gcc_log2=gcc_log2,
                    ratio=bound / gcc_log2 if gcc_log2 > 0 else None,
                )
            )
    logger.debug(f"VC sweep over {len(rows)} MLPs")
    return rows
