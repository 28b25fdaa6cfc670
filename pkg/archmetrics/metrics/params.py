from archmetrics.graph.models import LayerType, NetworkGraph
from archmetrics.graph.shapes import ensure_shapes


def count_params(graph: NetworkGraph) -> int:
    """
    Count trainable parameters the way the published model tables do.

    Convolutions hold kernel_h * kernel_w * c_in weights per filter plus an
    optional bias, dense layers (d_in + 1) * d_out, batch norm a scale and a
    shift per channel. Nothing else is trainable.
    """
    graph = ensure_shapes(graph)
    total = 0
    for node in graph.nodes:
        layer_type = node.layer_type
        params = node.kind
        if layer_type in (LayerType.CONV2D, LayerType.CONV_TRANSPOSE2D):
            c_in = graph.node(node.inputs[0]).out_shape.channels
            per_filter = params.kernel_h * params.kernel_w * c_in + params.use_bias
            total += per_filter * params.filters
        elif layer_type is LayerType.DENSE:
            d_in = graph.node(node.inputs[0]).out_shape.size
            total += (d_in + params.use_bias) * params.units
        elif layer_type is LayerType.BATCH_NORM:
            total += 2 * node.out_shape.channels
    return total
