import logging
from typing import Dict, List, Tuple

from archmetrics.errors import GraphValidationError, ShapeInferenceError
from archmetrics.graph.models import (
    Conv2D,
    LayerNode,
    LayerType,
    NetworkGraph,
    Padding,
    PaddingMode,
    Pool2D,
    TensorShape,
)
from archmetrics.graph.traversal import topological_order
from archmetrics.graph.validation import validate_graph
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

SHAPE_PRESERVING = frozenset(
    {
        LayerType.ACTIVATION,
        LayerType.BATCH_NORM,
        LayerType.DROPOUT,
        LayerType.IDENTITY,
    }
)


def _fail(key: str, node: LayerNode, **kwargs: object) -> ShapeInferenceError:
    return ShapeInferenceError(
        i18n["shapes"][key].format(node_id=node.id, **kwargs), node_id=node.id
    )


def _build(node: LayerNode, dims: Tuple[int, ...]) -> TensorShape:
    if any(d < 1 for d in dims):
        raise _fail("non_positive", node, dims="x".join(str(d) for d in dims))
    return TensorShape(dims)


def _require_spatial(node: LayerNode, shape: TensorShape) -> None:
    if not shape.is_spatial:
        raise _fail(
            "needs_spatial", node, kind=node.layer_type.value, dims=str(shape)
        )


def _resolve_padding(
    node: LayerNode, padding: Padding, kernel_h: int, kernel_w: int
) -> Tuple[int, int]:
    if padding.mode is PaddingMode.SAME and (kernel_h % 2 == 0 or kernel_w % 2 == 0):
        raise _fail("even_same_padding", node, kernel_h=kernel_h, kernel_w=kernel_w)
    return padding.resolve(kernel_h, kernel_w)


def _window_shape(node: LayerNode, shape: TensorShape, channels: int) -> TensorShape:
    params = node.kind
    assert isinstance(params, (Conv2D, Pool2D))
    _require_spatial(node, shape)
    pad_h, pad_w = _resolve_padding(
        node, params.padding, params.kernel_h, params.kernel_w
    )
    out_h = (shape.height + 2 * pad_h - params.kernel_h) // params.stride + 1
    out_w = (shape.width + 2 * pad_w - params.kernel_w) // params.stride + 1
    return _build(node, (out_h, out_w, channels))


def _transpose_shape(node: LayerNode, shape: TensorShape) -> TensorShape:
    params = node.kind
    assert isinstance(params, Conv2D)
    _require_spatial(node, shape)
    pad_h, pad_w = _resolve_padding(
        node, params.padding, params.kernel_h, params.kernel_w
    )
    out_h = (shape.height - 1) * params.stride - 2 * pad_h + params.kernel_h
    out_w = (shape.width - 1) * params.stride - 2 * pad_w + params.kernel_w
    return _build(node, (out_h, out_w, params.filters))


def _concat_shape(node: LayerNode, shapes: List[TensorShape]) -> TensorShape:
    first = shapes[0]
    if any(s.rank != first.rank or s.dims[:-1] != first.dims[:-1] for s in shapes):
        raise _fail(
            "concat_mismatch", node, shapes=", ".join(str(s) for s in shapes)
        )
    return TensorShape(first.dims[:-1] + (sum(s.channels for s in shapes),))


def _node_shape(
    g: NetworkGraph, node: LayerNode, shapes: Dict[str, TensorShape]
) -> TensorShape:
    layer_type = node.layer_type
    incoming = [shapes[i] for i in node.inputs]

    if layer_type is LayerType.INPUT:
        return g.input_shape
    if layer_type in (LayerType.ADD, LayerType.CONCAT):
        if layer_type is LayerType.CONCAT:
            return _concat_shape(node, incoming)
        if len(set(incoming)) != 1:
            raise _fail(
                "add_mismatch", node, shapes=", ".join(str(s) for s in incoming)
            )
        return incoming[0]

    (shape,) = incoming
    if layer_type in SHAPE_PRESERVING:
        return shape
    if layer_type is LayerType.CONV2D:
        return _window_shape(node, shape, node.kind.filters)
    if layer_type is LayerType.CONV_TRANSPOSE2D:
        return _transpose_shape(node, shape)
    if layer_type is LayerType.POOL2D:
        return _window_shape(node, shape, shape.channels)
    if layer_type is LayerType.GLOBAL_POOL:
        _require_spatial(node, shape)
        return TensorShape((1, 1, shape.channels))
    if layer_type is LayerType.FLATTEN:
        return TensorShape((shape.size,))
    if layer_type is LayerType.DENSE:
        if not shape.is_flat:
            raise _fail("needs_flat", node, dims=str(shape))
        return TensorShape((node.kind.units,))
    raise AssertionError(f"no shape rule for {layer_type}")


def infer_shapes(g: NetworkGraph) -> NetworkGraph:
    """
    Fill in `out_shape` for every node.

    Window ops use floor((in + 2*pad - kernel) / stride) + 1, transpose
    convolution uses (in - 1) * stride - 2*pad + kernel.
    """
    report = validate_graph(g)
    if not report.ok:
        raise GraphValidationError(report)

    shapes: Dict[str, TensorShape] = {}
    for node_id in topological_order(g):
        node = g.node(node_id)
        shapes[node_id] = _node_shape(g, node, shapes)
    logger.debug(f"Inferred shapes for '{g.name}'; output is {shapes[g.sinks()[0]]}")
    return g.with_shapes(shapes)


def ensure_shapes(g: NetworkGraph) -> NetworkGraph:
    """Return the graph unchanged if it already carries shapes."""
    if g.has_shapes:
        return g
    return infer_shapes(g)
