"""Reading and writing the JSON interchange format for architecture graphs."""
import dataclasses
import json
import logging
from enum import Enum
from typing import Any, Dict, List

from archmetrics.errors import GraphParseError
from archmetrics.graph.models import (
    KIND_CLASSES,
    InvalidParameter,
    LayerKind,
    LayerNode,
    LayerType,
    NetworkGraph,
    Padding,
    PaddingMode,
    TensorShape,
)
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

DOCUMENT_FIELDS = ("name", "input_shape", "nodes")
NODE_FIELDS = ("id", "kind", "params", "inputs")


def _padding_to_json(padding: Padding) -> Any:
    if padding.mode is PaddingMode.EXPLICIT:
        return [padding.pad_h, padding.pad_w]
    return padding.mode.value


def _padding_from_json(value: Any) -> Padding:
    if isinstance(value, str):
        if value == PaddingMode.EXPLICIT.value:
            raise InvalidParameter("padding", value)
        return Padding(PaddingMode(value))
    if isinstance(value, list) and len(value) == 2:
        return Padding.explicit(value[0], value[1])
    raise InvalidParameter("padding", value)


def _param_to_json(value: Any) -> Any:
    if isinstance(value, Padding):
        return _padding_to_json(value)
    if isinstance(value, Enum):
        return value.value
    return value


def _param_from_json(name: str, value: Any) -> Any:
    if name == "padding":
        return _padding_from_json(value)
    if name == "rate" and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def _params_to_json(kind: LayerKind) -> Dict[str, Any]:
    return {
        f.name: _param_to_json(getattr(kind, f.name)) for f in dataclasses.fields(kind)
    }


def _shape_from_json(value: Any) -> TensorShape:
    try:
        if not isinstance(value, list):
            raise ValueError(value)
        return TensorShape(tuple(value))
    except (ValueError, TypeError):
        raise GraphParseError(
            i18n["graph"]["bad_shape"].format(dims=value), field="input_shape"
        )


def _parse_kind(node_id: str, tag: Any, params: Any) -> LayerKind:
    try:
        layer_type = LayerType(tag)
    except ValueError:
        raise GraphParseError(
            i18n["graph"]["unknown_kind"].format(node_id=node_id, kind=tag),
            node_id=node_id,
            field="kind",
        )
    if not isinstance(params, dict):
        raise GraphParseError(
            i18n["graph"]["bad_param"].format(
                node_id=node_id, field="params", value=params
            ),
            node_id=node_id,
            field="params",
        )
    cls = KIND_CLASSES[layer_type]
    known = {f.name: f for f in dataclasses.fields(cls)}
    for name in params:
        if name not in known:
            raise GraphParseError(
                i18n["graph"]["unknown_param"].format(node_id=node_id, field=name),
                node_id=node_id,
                field=name,
            )
    for name, declared in known.items():
        required = (
            declared.default is dataclasses.MISSING
            and declared.default_factory is dataclasses.MISSING
        )
        if required and name not in params:
            raise GraphParseError(
                i18n["graph"]["missing_param"].format(node_id=node_id, field=name),
                node_id=node_id,
                field=name,
            )
    try:
        return cls(
            **{name: _param_from_json(name, value) for name, value in params.items()}
        )
    except InvalidParameter as e:
        raise GraphParseError(
            i18n["graph"]["bad_param"].format(
                node_id=node_id, field=e.field, value=e.value
            ),
            node_id=node_id,
            field=e.field,
        )
    except (ValueError, TypeError) as e:
        # enum lookups (pool mode, activation fn) fail with a bare ValueError
        raise GraphParseError(
            i18n["graph"]["bad_param"].format(node_id=node_id, field="params", value=e),
            node_id=node_id,
            field="params",
        )


def _parse_node(raw: Any, index: int) -> LayerNode:
    if not isinstance(raw, dict):
        raise GraphParseError(i18n["graph"]["not_an_object"], field=f"nodes[{index}]")
    node_id = raw.get("id", f"#{index}")
    for name in raw:
        if name not in NODE_FIELDS:
            raise GraphParseError(
                i18n["graph"]["unknown_node_field"].format(node_id=node_id, field=name),
                node_id=node_id,
                field=name,
            )
    for name in ("id", "kind"):
        if name not in raw:
            raise GraphParseError(
                i18n["graph"]["missing_node_field"].format(node_id=node_id, field=name),
                node_id=node_id,
                field=name,
            )
    if not isinstance(raw["id"], str) or not raw["id"]:
        raise GraphParseError(
            i18n["graph"]["bad_param"].format(
                node_id=node_id, field="id", value=raw["id"]
            ),
            node_id=node_id,
            field="id",
        )
    inputs = raw.get("inputs", [])
    if not isinstance(inputs, list) or not all(isinstance(i, str) for i in inputs):
        raise GraphParseError(
            i18n["graph"]["bad_param"].format(
                node_id=node_id, field="inputs", value=inputs
            ),
            node_id=node_id,
            field="inputs",
        )
    kind = _parse_kind(node_id, raw["kind"], raw.get("params", {}))
    return LayerNode(id=node_id, kind=kind, inputs=tuple(inputs))


def parse_graph(text: str) -> NetworkGraph:
    """
    Build a graph from its JSON document.

    The result is not validated and carries no shapes. Duplicate ids are
    rejected here because nothing downstream could address them.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphParseError(i18n["graph"]["malformed_json"].format(error=e))
    if not isinstance(document, dict):
        raise GraphParseError(i18n["graph"]["not_an_object"])
    for name in document:
        if name not in DOCUMENT_FIELDS:
            raise GraphParseError(
                i18n["graph"]["unknown_field"].format(field=name), field=name
            )
    for name in DOCUMENT_FIELDS:
        if name not in document:
            raise GraphParseError(
                i18n["graph"]["missing_field"].format(field=name), field=name
            )
    if not isinstance(document["nodes"], list):
        raise GraphParseError(
            i18n["graph"]["bad_param"].format(
                node_id="-", field="nodes", value=document["nodes"]
            ),
            field="nodes",
        )

    nodes: List[LayerNode] = []
    seen = set()
    for index, raw in enumerate(document["nodes"]):
        node = _parse_node(raw, index)
        if node.id in seen:
            raise GraphParseError(
                i18n["graph"]["duplicate_id"].format(node_id=node.id),
                node_id=node.id,
                field="id",
            )
        seen.add(node.id)
        nodes.append(node)

    graph = NetworkGraph(
        name=str(document["name"]),
        input_shape=_shape_from_json(document["input_shape"]),
        nodes=tuple(nodes),
    )
    logger.debug(f"Parsed graph '{graph.name}' with {len(graph)} nodes")
    return graph


def graph_to_dict(g: NetworkGraph) -> Dict[str, Any]:
    return {
        "name": g.name,
        "input_shape": list(g.input_shape.dims),
        "nodes": [
            {
                "id": node.id,
                "kind": node.layer_type.value,
                "params": _params_to_json(node.kind),
                "inputs": list(node.inputs),
            }
            for node in g.nodes
        ],
    }


def serialize_graph(g: NetworkGraph) -> str:
    """Return the canonical JSON document for a graph (shapes are not written)."""
    return json.dumps(graph_to_dict(g), indent=2, ensure_ascii=False) + "\n"
