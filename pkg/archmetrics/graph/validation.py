import heapq
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from archmetrics.graph.models import LayerType, NetworkGraph, expected_arity
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

CYCLE = "cycle"
MULTI_SINK = "multi_sink"
NO_SINK = "no_sink"
ARITY = "arity"
DANGLING = "dangling"
DUPLICATE_ID = "duplicate_id"
INPUT_COUNT = "input_count"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    node_ids: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> Tuple[str, ...]:
        return tuple(v.code for v in self.violations)


def _violation(
    code: str, node_ids: Tuple[str, ...] = (), **kwargs: object
) -> Violation:
    return Violation(
        code=code,
        message=i18n["graph"]["violations"][code].format(**kwargs),
        node_ids=node_ids,
    )


def partial_order(g: NetworkGraph) -> Tuple[List[str], List[str]]:
    """
    Run Kahn's algorithm with ties broken by declaration order.

    Inputs that do not exist are ignored. Returns the ordered ids and the ids
    that could not be ordered because they sit on or behind a cycle.
    """
    positions = g.positions
    pending: Dict[str, int] = {}
    for node_id, index in positions.items():
        node = g.nodes[index]
        pending[node_id] = len({i for i in node.inputs if i in positions})

    ready = [positions[n] for n, count in pending.items() if count == 0]
    heapq.heapify(ready)
    order: List[str] = []
    while ready:
        node_id = g.nodes[heapq.heappop(ready)].id
        order.append(node_id)
        for reader in g.consumers[node_id]:
            pending[reader] -= 1
            if pending[reader] == 0:
                heapq.heappush(ready, positions[reader])

    placed = set(order)
    leftover = [n for n in positions if n not in placed]
    return order, leftover


def cycle_violation(g: NetworkGraph, leftover: List[str]) -> Violation:
    # Peel nodes that only feed out of the stuck region; what stays is on a cycle.
    members = set(leftover)
    changed = True
    while changed:
        changed = False
        for node_id in list(members):
            if not any(reader in members for reader in g.consumers[node_id]):
                members.discard(node_id)
                changed = True
    ordered = sorted(members, key=g.positions.__getitem__) or leftover
    return _violation(CYCLE, tuple(ordered), nodes=" -> ".join(ordered))


def validate_graph(g: NetworkGraph) -> ValidationReport:
    """Collect every structural problem that would make the graph unusable."""
    violations: List[Violation] = []

    for node_id, count in Counter(node.id for node in g.nodes).items():
        if count > 1:
            violations.append(_violation(DUPLICATE_ID, (node_id,), node_id=node_id))

    inputs = [node.id for node in g.nodes if node.layer_type is LayerType.INPUT]
    if len(inputs) != 1:
        violations.append(_violation(INPUT_COUNT, tuple(inputs), count=len(inputs)))

    for node in g.nodes:
        low, high = expected_arity(node.layer_type)
        actual = len(node.inputs)
        if actual < low or (high is not None and actual > high):
            expected = str(low) if high == low else f"{low} or more"
            violations.append(
                _violation(
                    ARITY,
                    (node.id,),
                    node_id=node.id,
                    kind=node.layer_type.value,
                    expected=expected,
                    actual=actual,
                )
            )
        for source in node.inputs:
            if source not in g.positions:
                violations.append(
                    _violation(DANGLING, (node.id,), node_id=node.id, missing=source)
                )

    _, leftover = partial_order(g)
    if leftover:
        violations.append(cycle_violation(g, leftover))

    sinks = g.sinks()
    if not sinks:
        violations.append(_violation(NO_SINK))
    elif len(sinks) > 1:
        violations.append(_violation(MULTI_SINK, sinks, nodes=", ".join(sinks)))

    report = ValidationReport(tuple(violations))
    if not report.ok:
        logger.debug(f"Graph '{g.name}' has violations: {', '.join(report.codes)}")
    return report
