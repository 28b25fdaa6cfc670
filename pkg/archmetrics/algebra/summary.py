import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple

from archmetrics.algebra.propagation import (
    ComplexityMode,
    CumulativeState,
    PowerMerge,
    PropagationConfig,
    cumulative_state,
)
from archmetrics.errors import GraphValidationError
from archmetrics.graph.models import LayerType, NetworkGraph
from archmetrics.graph.shapes import ensure_shapes
from archmetrics.graph.traversal import depth_index, topological_order
from archmetrics.graph.validation import validate_graph
from archmetrics.metrics.local import LocalMetrics, local_metrics
from archmetrics.metrics.params import count_params

logger = logging.getLogger(__name__)

CURVE_HEADER = (
    "node_id",
    "depth",
    "kind",
    "p_local",
    "c_local",
    "P_cum",
    "log2_C_cum",
)


@dataclass(frozen=True)
class GlobalMetrics:
    gcip: float
    gsip: float
    # log2 of the cumulative value in multiplicative mode, the plain sum otherwise
    gcc_log2: float
    gsc: float
    gwc_log2: Optional[float]
    equivalent_layers: int
    params: int
    complexity_mode: ComplexityMode = ComplexityMode.MULTIPLICATIVE
    power_merge: PowerMerge = PowerMerge.MAX

    def to_json(self) -> Dict[str, Any]:
        return {
            "gcip": self.gcip,
            "gsip": self.gsip,
            "log2_gcc": self.gcc_log2,
            "gsc": self.gsc,
            "log2_gwc": self.gwc_log2,
            "equivalent_layers": self.equivalent_layers,
            "params": self.params,
            "complexity_mode": self.complexity_mode.value,
            "power_merge": self.power_merge.value,
        }


@dataclass(frozen=True)
class CurveRow:
    node_id: str
    depth: int
    kind: str
    p_local: float
    c_local: float
    P_cum: float  # noqa: N815
    log2_C_cum: float  # noqa: N815

    def as_tuple(self) -> Tuple[Any, ...]:
        return (
            self.node_id,
            self.depth,
            self.kind,
            self.p_local,
            self.c_local,
            self.P_cum,
            self.log2_C_cum,
        )


def global_sum(local: Mapping[str, LocalMetrics]) -> Tuple[float, float]:
    """Return (gsip, gsc): the topology-blind sums of local power and complexity."""
    gsip = 0.0
    gsc = 0.0
    # Summed one by one in node order, the same way the additive propagation
    # accumulates, so a chain's additive complexity matches gsc bit for bit.
    for metrics in local.values():
        gsip += metrics.p_local
        gsc += metrics.c_local
    return gsip, gsc


def _prepare(
    graph: NetworkGraph, config: PropagationConfig
) -> Tuple[NetworkGraph, Dict[str, LocalMetrics], CumulativeState]:
    report = validate_graph(graph)
    if not report.ok:
        raise GraphValidationError(report)
    graph = ensure_shapes(graph)
    ordered = topological_order(graph)
    local = local_metrics(graph, config.metrics)
    local = {node_id: local[node_id] for node_id in ordered}
    return graph, local, cumulative_state(graph, local, config)


def _weighted_log2(gcc: float, gsc: float, mode: ComplexityMode) -> Optional[float]:
    if gsc <= 0:
        return None
    if mode is ComplexityMode.MULTIPLICATIVE:
        return gcc + math.log2(gsc)
    if gcc <= 0:
        return None
    return math.log2(gcc) + math.log2(gsc)


def global_metrics(
    graph: NetworkGraph, config: PropagationConfig = PropagationConfig()
) -> GlobalMetrics:
    """
    Evaluate the cumulative properties at the output layer.

    The weighted complexity is the product of the cumulative and the summed
    complexity, reported as log2. It is None when the summed complexity is 0.
    """
    graph, local, state = _prepare(graph, config)
    (sink,) = graph.sinks()
    gsip, gsc = global_sum(local)
    gcc = state.complexity[sink]
    result = GlobalMetrics(
        gcip=state.power[sink],
        gsip=gsip,
        gcc_log2=gcc,
        gsc=gsc,
        gwc_log2=_weighted_log2(gcc, gsc, config.complexity_mode),
        equivalent_layers=len(graph) - graph.count([LayerType.INPUT]),
        params=count_params(graph),
        complexity_mode=config.complexity_mode,
        power_merge=config.power_merge,
    )
    logger.debug(
        f"'{graph.name}': gcip={result.gcip:.6g} log2_gcc={result.gcc_log2:.6g}"
        f" gsc={result.gsc:.6g}"
    )
    return result


def cumulative_curves(
    graph: NetworkGraph, config: PropagationConfig = PropagationConfig()
) -> List[CurveRow]:
    """One row per node, ordered by depth and then by topological position."""
    graph, local, state = _prepare(graph, config)
    depths = depth_index(graph)
    position = {node_id: index for index, node_id in enumerate(local)}
    ordered = sorted(local, key=lambda node_id: (depths[node_id], position[node_id]))
    return [
        CurveRow(
            node_id=node_id,
            depth=depths[node_id],
            kind=graph.node(node_id).layer_type.value,
            p_local=local[node_id].p_local,
            c_local=local[node_id].c_local,
            P_cum=state.power[node_id],
            log2_C_cum=state.complexity[node_id],
        )
        for node_id in ordered
    ]
