"""
Propagation of local metrics over the graph.

Layers in series multiply their power; a bifurcation hands the same value to
every consumer; merge nodes keep the strongest incoming power (or the sum)
and add up the incoming complexities.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping

import numpy as np

from archmetrics.errors import PowerUnderflowError
from archmetrics.graph.models import NetworkGraph
from archmetrics.graph.traversal import topological_order
from archmetrics.metrics.local import LocalMetrics, MetricsConfig
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()


class ComplexityMode(str, Enum):
    # cumulative complexity is a running product, carried as log2
    MULTIPLICATIVE = "multiplicative"
    # cumulative complexity is a running sum
    ADDITIVE = "additive"


class PowerMerge(str, Enum):
    MAX = "max"
    SUM = "sum"


@dataclass(frozen=True)
class PropagationConfig:
    complexity_mode: ComplexityMode = ComplexityMode.MULTIPLICATIVE
    power_merge: PowerMerge = PowerMerge.MAX
    metrics: MetricsConfig = field(default_factory=MetricsConfig)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "complexity_mode", ComplexityMode(self.complexity_mode)
        )
        object.__setattr__(self, "power_merge", PowerMerge(self.power_merge))


@dataclass(frozen=True)
class CumulativeState:
    power: Mapping[str, float]
    complexity: Mapping[str, float]
    complexity_mode: ComplexityMode


def _merge_power(values: List[float], merge: PowerMerge) -> float:
    if merge is PowerMerge.SUM:
        total = 0.0
        for value in values:
            total += value
        return total
    return max(values)


def propagate_power(
    graph: NetworkGraph,
    local: Mapping[str, LocalMetrics],
    config: PropagationConfig = PropagationConfig(),
) -> Dict[str, float]:
    """
    Cumulative intrinsic power of every node, starting from u = 1.

    Values are kept as plain floats. A graph whose power would fall below the
    smallest positive float raises PowerUnderflowError instead of reporting 0.
    """
    power: Dict[str, float] = {}
    for node_id in topological_order(graph):
        inputs = graph.node(node_id).inputs
        if not inputs:
            incoming = 1.0
        elif len(inputs) == 1:
            incoming = power[inputs[0]]
        else:
            incoming = _merge_power([power[i] for i in inputs], config.power_merge)
        power[node_id] = incoming * local[node_id].p_local
        if power[node_id] == 0.0:
            # every local power is positive, so zero only comes from underflow
            raise PowerUnderflowError(
                i18n["algebra"]["power_underflow"].format(node_id=node_id),
                node_id=node_id,
            )
    return power


def _log2_factor(metrics: LocalMetrics) -> float:
    # A layer may add no capacity but never removes what came before it.
    if metrics.neutral or metrics.c_local <= 1:
        return 0.0
    return math.log2(metrics.c_local)


def propagate_complexity(
    graph: NetworkGraph,
    local: Mapping[str, LocalMetrics],
    config: PropagationConfig = PropagationConfig(),
) -> Dict[str, float]:
    """
    Cumulative complexity of every node.

    In multiplicative mode the values are log2 of the running product and
    merges add the linear-domain values in log space. In additive mode they
    are plain running sums.
    """
    multiplicative = config.complexity_mode is ComplexityMode.MULTIPLICATIVE
    complexity: Dict[str, float] = {}
    for node_id in topological_order(graph):
        inputs = graph.node(node_id).inputs
        incoming_values = [complexity[i] for i in inputs]
        if not incoming_values:
            # log2 of the unit input complexity, or an empty sum
            incoming = 0.0
        elif len(incoming_values) == 1:
            incoming = incoming_values[0]
        elif multiplicative:
            incoming = float(np.logaddexp2.reduce(np.asarray(incoming_values)))
        else:
            incoming = 0.0
            for value in incoming_values:
                incoming += value

        if multiplicative:
            complexity[node_id] = incoming + _log2_factor(local[node_id])
        else:
            complexity[node_id] = incoming + local[node_id].c_local
    return complexity


def cumulative_state(
    graph: NetworkGraph,
    local: Mapping[str, LocalMetrics],
    config: PropagationConfig = PropagationConfig(),
) -> CumulativeState:
    state = CumulativeState(
        power=propagate_power(graph, local, config),
        complexity=propagate_complexity(graph, local, config),
        complexity_mode=config.complexity_mode,
    )
    logger.debug(
        f"Propagated '{graph.name}' with {config.complexity_mode.value} complexity"
        f" and {config.power_merge.value} power merge"
    )
    return state
