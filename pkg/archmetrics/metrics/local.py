"""
Local intrinsic power and complexity for every layer kind.

Power is the ratio between the output space and the input space of a layer
as seen by its local operator; complexity is log2 of the size of that
operator, scaled by the number of filters. Everything is computed from
hyperparameters and shapes alone.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict

from archmetrics.errors import ShapeInferenceError
from archmetrics.graph.models import (
    ActivationFn,
    LayerNode,
    LayerType,
    NetworkGraph,
    PoolMode,
    TensorShape,
)
from archmetrics.graph.shapes import ensure_shapes
from archmetrics.metrics.constants import DEFAULT_CONSTANTS, ActivationConstants
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

NEUTRAL_TYPES = frozenset(
    {
        LayerType.INPUT,
        LayerType.BATCH_NORM,
        LayerType.DROPOUT,
        LayerType.ADD,
        LayerType.CONCAT,
        LayerType.FLATTEN,
        LayerType.IDENTITY,
    }
)


@dataclass(frozen=True)
class LocalMetrics:
    p_local: float
    c_local: float
    neutral: bool = False

    def __post_init__(self) -> None:
        if not self.p_local > 0:
            raise ValueError(f"p_local must be positive, got {self.p_local}")
        if not self.c_local >= 0:
            raise ValueError(f"c_local must be non-negative, got {self.c_local}")
        if self.neutral and (self.p_local != 1 or self.c_local != 0):
            raise ValueError("neutral metrics must be exactly (1, 0)")


NEUTRAL = LocalMetrics(1.0, 0.0, neutral=True)


class KernelScope(str, Enum):
    """How much of the input a convolution filter is considered to see."""

    # kernel_h * kernel_w * input channels
    FULL = "full"
    # kernel_h * kernel_w only
    SPATIAL = "spatial"


@dataclass(frozen=True)
class MetricsConfig:
    constants: ActivationConstants = field(default=DEFAULT_CONSTANTS)
    kernel_scope: KernelScope = KernelScope.FULL

    def __post_init__(self) -> None:
        object.__setattr__(self, "kernel_scope", KernelScope(self.kernel_scope))


def conv_metrics(
    kernel_h: int,
    kernel_w: int,
    filters: int,
    in_shape: TensorShape,
    out_shape: TensorShape,
    kernel_scope: KernelScope = KernelScope.FULL,
) -> LocalMetrics:
    """
    Metrics of a convolution with `filters` kernels.

    p = n_k * (C_o * S_o) / (K * S_i) with C_o = 1 and c = n_k * log2(K). With
    the full kernel scope K also spans the input channels.
    """
    kernel = kernel_h * kernel_w
    if kernel_scope is KernelScope.FULL:
        kernel *= in_shape.channels
    p = filters * out_shape.spatial_size / (kernel * in_shape.spatial_size)
    return LocalMetrics(p, filters * math.log2(kernel))


def transpose_conv_metrics(
    kernel_h: int,
    kernel_w: int,
    filters: int,
    in_shape: TensorShape,
    out_shape: TensorShape,
    kernel_scope: KernelScope = KernelScope.FULL,
) -> LocalMetrics:
    """
    Metrics of a transpose convolution.

    Every input element is spread over K outputs, so the roles flip:
    p = n_k * (K * S_o) / (C_i * S_i) with C_i = 1, and c = n_k * log2(K).
    """
    kernel = kernel_h * kernel_w
    in_space = in_shape.spatial_size
    complexity_kernel = kernel
    if kernel_scope is KernelScope.FULL:
        in_space *= in_shape.channels
        complexity_kernel *= in_shape.channels
    p = filters * kernel * out_shape.spatial_size / in_space
    return LocalMetrics(p, filters * math.log2(complexity_kernel))


def pool_metrics(
    mode: PoolMode,
    kernel_h: int,
    kernel_w: int,
    in_shape: TensorShape,
    out_shape: TensorShape,
) -> LocalMetrics:
    # Pooling has no learned filters and works per channel; max and avg agree.
    kernel = kernel_h * kernel_w
    p = out_shape.spatial_size / (kernel * in_shape.spatial_size)
    return LocalMetrics(p, math.log2(kernel))


def global_pool_metrics(in_shape: TensorShape) -> LocalMetrics:
    """A single filter as large as the input: K = S_i and S_o = 1."""
    spatial = in_shape.spatial_size
    return LocalMetrics(1 / (spatial * spatial), math.log2(spatial))


def dense_metrics(d_in: int, d_out: int) -> LocalMetrics:
    return LocalMetrics(d_out / d_in, math.log2(d_out * d_in))


def activation_metrics(
    fn: ActivationFn, constants: ActivationConstants = DEFAULT_CONSTANTS
) -> LocalMetrics:
    entry = constants[fn]
    if entry.neutral:
        return NEUTRAL
    return LocalMetrics(entry.p, entry.c)


def neutral_metrics(kind: LayerType) -> LocalMetrics:
    if LayerType(kind) not in NEUTRAL_TYPES:
        raise ValueError(f"{kind} is not a neutral layer kind")
    return NEUTRAL


def _input_shape(node: LayerNode, graph: NetworkGraph) -> TensorShape:
    shape = graph.node(node.inputs[0]).out_shape
    if shape is None or node.out_shape is None:
        raise ShapeInferenceError(
            i18n["metrics"]["no_shapes"].format(node_id=node.id), node_id=node.id
        )
    return shape


def node_metrics(
    node: LayerNode, graph: NetworkGraph, config: MetricsConfig = MetricsConfig()
) -> LocalMetrics:
    """Route a node to the rule for its kind; the graph must carry shapes."""
    layer_type = node.layer_type
    params = node.kind

    if layer_type in NEUTRAL_TYPES:
        return neutral_metrics(layer_type)
    if layer_type is LayerType.ACTIVATION:
        return activation_metrics(params.fn, config.constants)

    in_shape = _input_shape(node, graph)
    out_shape = node.out_shape
    if layer_type is LayerType.CONV2D:
        return conv_metrics(
            params.kernel_h,
            params.kernel_w,
            params.filters,
            in_shape,
            out_shape,
            config.kernel_scope,
        )
    if layer_type is LayerType.CONV_TRANSPOSE2D:
        return transpose_conv_metrics(
            params.kernel_h,
            params.kernel_w,
            params.filters,
            in_shape,
            out_shape,
            config.kernel_scope,
        )
    if layer_type is LayerType.POOL2D:
        return pool_metrics(
            params.mode, params.kernel_h, params.kernel_w, in_shape, out_shape
        )
    if layer_type is LayerType.GLOBAL_POOL:
        return global_pool_metrics(in_shape)
    if layer_type is LayerType.DENSE:
        return dense_metrics(in_shape.size, out_shape.size)
    raise AssertionError(i18n["metrics"]["unreachable_kind"].format(kind=layer_type))


def local_metrics(
    graph: NetworkGraph, config: MetricsConfig = MetricsConfig()
) -> Dict[str, LocalMetrics]:
    """Metrics for every node, keyed by id in declaration order."""
    graph = ensure_shapes(graph)
    metrics = {node.id: node_metrics(node, graph, config) for node in graph.nodes}
    logger.debug(
        f"Computed local metrics for {len(metrics)} nodes of '{graph.name}'"
        f" (kernel scope {config.kernel_scope.value})"
    )
    return metrics
