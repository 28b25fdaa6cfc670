from typing import Dict, List

from archmetrics.errors import GraphValidationError
from archmetrics.graph.models import NetworkGraph
from archmetrics.graph.validation import (
    ValidationReport,
    cycle_violation,
    partial_order,
)


def topological_order(g: NetworkGraph) -> List[str]:
    """
    Order node ids so that every node comes after all of its inputs.

    Ties are broken by declaration order, so the result is reproducible.
    """
    order, leftover = partial_order(g)
    if leftover:
        raise GraphValidationError(ValidationReport((cycle_violation(g, leftover),)))
    return order


def depth_index(g: NetworkGraph) -> Dict[str, int]:
    """Longest-path distance from the sources; sources sit at depth 0."""
    depths: Dict[str, int] = {}
    for node_id in topological_order(g):
        sources = [i for i in g.node(node_id).inputs if i in depths]
        depths[node_id] = 1 + max(depths[i] for i in sources) if sources else 0
    return depths
