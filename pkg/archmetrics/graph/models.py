"""
The architecture graph data model.

A `NetworkGraph` is an immutable DAG of `LayerNode`s. Every node carries one
of the per-kind parameter dataclasses below; the dataclass field names are
the parameter names used in the JSON interchange format.
"""
import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import ClassVar, Dict, Iterable, Mapping, Optional, Tuple, Union


class InvalidParameter(ValueError):
    """A layer parameter is outside of its allowed range."""

    def __init__(self, field_name: str, value: object) -> None:  # noqa: D107
        super().__init__(f"invalid value for '{field_name}': {value!r}")
        self.field = field_name
        self.value = value


def _require(field_name: str, value: object, ok: bool) -> None:
    if not ok:
        raise InvalidParameter(field_name, value)


def _positive_int(field_name: str, value: object) -> None:
    _require(
        field_name,
        value,
        isinstance(value, int) and not isinstance(value, bool) and value >= 1,
    )


@dataclass(frozen=True)
class TensorShape:
    """Element counts per dimension; images are (height, width, channels)."""

    dims: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        _require("dims", self.dims, 1 <= len(self.dims) <= 4)
        for dim in self.dims:
            _positive_int("dims", dim)

    @classmethod
    def of(cls, *dims: int) -> "TensorShape":
        return cls(tuple(dims))

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def is_spatial(self) -> bool:
        return self.rank == 3

    @property
    def is_flat(self) -> bool:
        return self.rank == 1

    @property
    def height(self) -> int:
        return self.dims[0]

    @property
    def width(self) -> int:
        return self.dims[1]

    @property
    def channels(self) -> int:
        return self.dims[-1]

    @property
    def spatial_size(self) -> int:
        """Height times width for images; the single dim for flat vectors."""
        if self.is_spatial:
            return self.dims[0] * self.dims[1]
        return math.prod(self.dims)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


class PaddingMode(str, Enum):
    SAME = "same"
    VALID = "valid"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class Padding:
    mode: PaddingMode = PaddingMode.VALID
    pad_h: int = 0
    pad_w: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", PaddingMode(self.mode))
        for name in ("pad_h", "pad_w"):
            value = getattr(self, name)
            _require(
                "padding",
                value,
                isinstance(value, int) and not isinstance(value, bool) and value >= 0,
            )
        if self.mode is not PaddingMode.EXPLICIT:
            _require("padding", (self.pad_h, self.pad_w), self.pad_h == self.pad_w == 0)

    @classmethod
    def same(cls) -> "Padding":
        return cls(PaddingMode.SAME)

    @classmethod
    def valid(cls) -> "Padding":
        return cls(PaddingMode.VALID)

    @classmethod
    def explicit(cls, pad_h: int, pad_w: int) -> "Padding":
        return cls(PaddingMode.EXPLICIT, pad_h, pad_w)

    def resolve(self, kernel_h: int, kernel_w: int) -> Tuple[int, int]:
        """
        Return the per-side padding for the given kernel.

        "same" is only defined for odd kernels, where it is floor(k / 2). The
        caller is responsible for rejecting even kernels.
        """
        if self.mode is PaddingMode.SAME:
            return kernel_h // 2, kernel_w // 2
        if self.mode is PaddingMode.EXPLICIT:
            return self.pad_h, self.pad_w
        return 0, 0


class LayerType(str, Enum):
    INPUT = "input"
    CONV2D = "conv2d"
    CONV_TRANSPOSE2D = "conv_transpose2d"
    POOL2D = "pool2d"
    GLOBAL_POOL = "global_pool"
    DENSE = "dense"
    ACTIVATION = "activation"
    BATCH_NORM = "batch_norm"
    DROPOUT = "dropout"
    ADD = "add"
    CONCAT = "concat"
    FLATTEN = "flatten"
    IDENTITY = "identity"


class PoolMode(str, Enum):
    MAX = "max"
    AVG = "avg"


class ActivationFn(str, Enum):
    RELU = "relu"
    ELU = "elu"
    LEAKY_RELU = "leaky_relu"
    SWISH = "swish"
    TANH = "tanh"
    SIGMOID = "sigmoid"
    SOFTMAX = "softmax"
    LINEAR = "linear"


@dataclass(frozen=True)
class Input:
    layer_type: ClassVar[LayerType] = LayerType.INPUT


@dataclass(frozen=True)
class Conv2D:
    kernel_h: int
    kernel_w: int
    filters: int
    stride: int = 1
    padding: Padding = field(default_factory=Padding.valid)
    use_bias: bool = True

    layer_type: ClassVar[LayerType] = LayerType.CONV2D

    def __post_init__(self) -> None:
        for name in ("kernel_h", "kernel_w", "filters", "stride"):
            _positive_int(name, getattr(self, name))
        _require("padding", self.padding, isinstance(self.padding, Padding))
        _require("use_bias", self.use_bias, isinstance(self.use_bias, bool))

    @property
    def kernel_size(self) -> int:
        return self.kernel_h * self.kernel_w


@dataclass(frozen=True)
class ConvTranspose2D(Conv2D):
    layer_type: ClassVar[LayerType] = LayerType.CONV_TRANSPOSE2D


@dataclass(frozen=True)
class Pool2D:
    mode: PoolMode
    kernel_h: int
    kernel_w: int
    stride: int = 1
    padding: Padding = field(default_factory=Padding.valid)

    layer_type: ClassVar[LayerType] = LayerType.POOL2D

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", PoolMode(self.mode))
        for name in ("kernel_h", "kernel_w", "stride"):
            _positive_int(name, getattr(self, name))
        _require("padding", self.padding, isinstance(self.padding, Padding))

    @property
    def kernel_size(self) -> int:
        return self.kernel_h * self.kernel_w


@dataclass(frozen=True)
class GlobalPool:
    mode: PoolMode = PoolMode.AVG

    layer_type: ClassVar[LayerType] = LayerType.GLOBAL_POOL

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", PoolMode(self.mode))


@dataclass(frozen=True)
class Dense:
    units: int
    use_bias: bool = True

    layer_type: ClassVar[LayerType] = LayerType.DENSE

    def __post_init__(self) -> None:
        _positive_int("units", self.units)
        _require("use_bias", self.use_bias, isinstance(self.use_bias, bool))


@dataclass(frozen=True)
class Activation:
    fn: ActivationFn

    layer_type: ClassVar[LayerType] = LayerType.ACTIVATION

    def __post_init__(self) -> None:
        object.__setattr__(self, "fn", ActivationFn(self.fn))


@dataclass(frozen=True)
class BatchNorm:
    layer_type: ClassVar[LayerType] = LayerType.BATCH_NORM


@dataclass(frozen=True)
class Dropout:
    rate: float

    layer_type: ClassVar[LayerType] = LayerType.DROPOUT

    def __post_init__(self) -> None:
        _require(
            "rate",
            self.rate,
            isinstance(self.rate, (int, float))
            and not isinstance(self.rate, bool)
            and 0 <= self.rate < 1,
        )
        object.__setattr__(self, "rate", float(self.rate))


@dataclass(frozen=True)
class Add:
    layer_type: ClassVar[LayerType] = LayerType.ADD


@dataclass(frozen=True)
class Concat:
    layer_type: ClassVar[LayerType] = LayerType.CONCAT


@dataclass(frozen=True)
class Flatten:
    layer_type: ClassVar[LayerType] = LayerType.FLATTEN


@dataclass(frozen=True)
class Identity:
    layer_type: ClassVar[LayerType] = LayerType.IDENTITY


LayerKind = Union[
    Input,
    Conv2D,
    ConvTranspose2D,
    Pool2D,
    GlobalPool,
    Dense,
    Activation,
    BatchNorm,
    Dropout,
    Add,
    Concat,
    Flatten,
    Identity,
]

KIND_CLASSES: Dict[LayerType, type] = {
    cls.layer_type: cls
    for cls in (
        Input,
        Conv2D,
        ConvTranspose2D,
        Pool2D,
        GlobalPool,
        Dense,
        Activation,
        BatchNorm,
        Dropout,
        Add,
        Concat,
        Flatten,
        Identity,
    )
}

MERGE_TYPES = frozenset({LayerType.ADD, LayerType.CONCAT})


def expected_arity(layer_type: LayerType) -> Tuple[int, Optional[int]]:
    """Return the (minimum, maximum) number of inputs; None means unbounded."""
    if layer_type is LayerType.INPUT:
        return 0, 0
    if layer_type in MERGE_TYPES:
        return 2, None
    return 1, 1


@dataclass(frozen=True)
class LayerNode:
    id: str
    kind: LayerKind
    inputs: Tuple[str, ...] = ()
    out_shape: Optional[TensorShape] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))

    @property
    def layer_type(self) -> LayerType:
        return self.kind.layer_type


@dataclass(frozen=True)
class NetworkGraph:
    name: str
    input_shape: TensorShape
    nodes: Tuple[LayerNode, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def positions(self) -> Dict[str, int]:
        """Declaration index of every node id (first occurrence wins)."""
        positions: Dict[str, int] = {}
        for index, node in enumerate(self.nodes):
            positions.setdefault(node.id, index)
        return positions

    @cached_property
    def consumers(self) -> Dict[str, Tuple[str, ...]]:
        """Map each node id to the ids that read it, in declaration order."""
        readers: Dict[str, list] = {node.id: [] for node in self.nodes}
        for node in self.nodes:
            for source in node.inputs:
                if source in readers and node.id not in readers[source]:
                    readers[source].append(node.id)
        return {key: tuple(value) for key, value in readers.items()}

    def node(self, node_id: str) -> LayerNode:
        return self.nodes[self.positions[node_id]]

    def sinks(self) -> Tuple[str, ...]:
        return tuple(
            node_id for node_id, readers in self.consumers.items() if not readers
        )

    @property
    def has_shapes(self) -> bool:
        return all(node.out_shape is not None for node in self.nodes)

    def with_shapes(self, shapes: Mapping[str, TensorShape]) -> "NetworkGraph":
        """Return a copy of this graph with the given output shapes filled in."""
        return dataclasses.replace(
            self,
            nodes=tuple(
                dataclasses.replace(node, out_shape=shapes[node.id])
                for node in self.nodes
            ),
        )

    def without_shapes(self) -> "NetworkGraph":
        return dataclasses.replace(
            self,
            nodes=tuple(
                dataclasses.replace(node, out_shape=None) for node in self.nodes
            ),
        )

    def count(self, layer_types: Iterable[LayerType]) -> int:
        wanted = set(layer_types)
        return sum(1 for node in self.nodes if node.layer_type in wanted)
