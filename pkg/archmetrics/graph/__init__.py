"""Architecture graphs: data model, JSON format, validation, shapes, traversal."""
from archmetrics.graph.models import (  # noqa: F401
    Activation,
    ActivationFn,
    Add,
    BatchNorm,
    Concat,
    Conv2D,
    ConvTranspose2D,
    Dense,
    Dropout,
    Flatten,
    GlobalPool,
    Identity,
    Input,
    LayerKind,
    LayerNode,
    LayerType,
    NetworkGraph,
    Padding,
    PaddingMode,
    Pool2D,
    PoolMode,
    TensorShape,
)
from archmetrics.graph.serialization import parse_graph, serialize_graph  # noqa: F401
from archmetrics.graph.shapes import ensure_shapes, infer_shapes  # noqa: F401
from archmetrics.graph.traversal import depth_index, topological_order  # noqa: F401
from archmetrics.graph.validation import (  # noqa: F401
    ValidationReport,
    Violation,
    validate_graph,
)
