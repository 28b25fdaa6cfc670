"""
Builders for the architectures used in the experiments.

Every builder emits structure only: activation, batch norm, shortcut and
merge operations are separate nodes, and no shapes are filled in. Run
`infer_shapes` (or any analysis) to get them.
"""
import logging
import re
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from archmetrics.errors import UnknownModelError, ZooError
from archmetrics.graph.models import (
    Activation,
    ActivationFn,
    Add,
    BatchNorm,
    Conv2D,
    Dense,
    Dropout,
    Flatten,
    GlobalPool,
    Identity,
    Input,
    LayerKind,
    LayerNode,
    NetworkGraph,
    Padding,
    Pool2D,
    PoolMode,
    TensorShape,
)
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

IMAGENET_SHAPE = TensorShape.of(224, 224, 3)
IMAGENET_CLASSES = 1000

VGG_CONFIGS: Dict[int, Tuple[Union[int, str], ...]] = {
    # fmt: off
    11: (64, "M", 128, "M", 256, 256, "M", 512, 512, "M", 512, 512, "M"),
    13: (64, 64, "M", 128, 128, "M", 256, 256, "M", 512, 512, "M", 512, 512, "M"),
    16: (64, 64, "M", 128, 128, "M", 256, 256, 256, "M",
         512, 512, 512, "M", 512, 512, 512, "M"),
    19: (64, 64, "M", 128, 128, "M", 256, 256, 256, 256, "M",
         512, 512, 512, 512, "M", 512, 512, 512, 512, "M"),
    # fmt: on
}

# (bottleneck, blocks per stage)
RESNET_CONFIGS: Dict[int, Tuple[bool, Tuple[int, int, int, int]]] = {
    18: (False, (2, 2, 2, 2)),
    34: (False, (3, 4, 6, 3)),
    50: (True, (3, 4, 6, 3)),
    101: (True, (3, 4, 23, 3)),
    152: (True, (3, 8, 36, 3)),
}
STAGE_WIDTHS = (64, 128, 256, 512)
BOTTLENECK_EXPANSION = 4

DEFAULT_MLP = (784, 128, 10)
DEFAULT_AUTOENCODER = (64, 32, 16, 8, 16, 32, 64)


class _GraphBuilder:
    """Collects nodes in declaration order and hands out their ids."""

    def __init__(self, name: str, input_shape: TensorShape) -> None:
        self.name = name
        self.input_shape = input_shape
        self.nodes: List[LayerNode] = []
        self.last = self.add("input", Input(), ())

    def add(
        self, node_id: str, kind: LayerKind, inputs: Optional[Sequence[str]] = None
    ) -> str:
        if inputs is None:
            inputs = (self.last,)
        self.nodes.append(LayerNode(id=node_id, kind=kind, inputs=tuple(inputs)))
        self.last = node_id
        return node_id

    def build(self) -> NetworkGraph:
        graph = NetworkGraph(
            name=self.name, input_shape=self.input_shape, nodes=tuple(self.nodes)
        )
        logger.debug(f"Built '{graph.name}' with {len(graph)} nodes")
        return graph


def _check_widths(widths: Sequence[int]) -> Tuple[int, ...]:
    widths = tuple(widths)
    if len(widths) < 2:
        raise ZooError(i18n["zoo"]["too_few_widths"].format(widths=list(widths)))
    if any(isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in widths):
        raise ZooError(i18n["zoo"]["bad_width"].format(widths=list(widths)))
    return widths


def build_mlp(
    layer_widths: Sequence[int] = DEFAULT_MLP,
    activation: ActivationFn = ActivationFn.RELU,
) -> NetworkGraph:
    """Input followed by Dense/Activation pairs; the last Dense has no activation."""
    widths = _check_widths(layer_widths)
    activation = ActivationFn(activation)
    builder = _GraphBuilder(
        "mlp-" + "-".join(str(w) for w in widths), TensorShape.of(widths[0])
    )
    last_index = len(widths) - 1
    for index, width in enumerate(widths[1:], start=1):
        builder.add(f"dense{index}", Dense(width))
        if index != last_index:
            builder.add(f"act{index}", Activation(activation))
    return builder.build()


def build_autoencoder(widths: Sequence[int] = DEFAULT_AUTOENCODER) -> NetworkGraph:
    """A symmetric Dense chain where every layer uses a linear activation."""
    widths = _check_widths(widths)
    if widths != widths[::-1]:
        raise ZooError(i18n["zoo"]["not_palindrome"].format(widths=list(widths)))
    builder = _GraphBuilder(
        "autoencoder-" + "-".join(str(w) for w in widths), TensorShape.of(widths[0])
    )
    for index, width in enumerate(widths[1:], start=1):
        builder.add(f"dense{index}", Dense(width))
        builder.add(f"act{index}", Activation(ActivationFn.LINEAR))
    return builder.build()


def build_vgg(variant: int, batch_norm: bool = False) -> NetworkGraph:
    if variant not in VGG_CONFIGS:
        raise ZooError(
            i18n["zoo"]["bad_variant"].format(
                variant=variant, choices=sorted(VGG_CONFIGS)
            )
        )
    name = f"vgg{variant}_bn" if batch_norm else f"vgg{variant}"
    builder = _GraphBuilder(name, IMAGENET_SHAPE)
    conv_index = pool_index = 0
    for item in VGG_CONFIGS[variant]:
        if item == "M":
            pool_index += 1
            builder.add(f"pool{pool_index}", Pool2D(PoolMode.MAX, 2, 2, stride=2))
            continue
        conv_index += 1
        builder.add(f"conv{conv_index}", Conv2D(3, 3, item, padding=Padding.same()))
        if batch_norm:
            builder.add(f"bn{conv_index}", BatchNorm())
        builder.add(f"relu{conv_index}", Activation(ActivationFn.RELU))

    builder.add("flatten", Flatten())
    for index, units in enumerate((4096, 4096), start=1):
        builder.add(f"fc{index}", Dense(units))
        builder.add(f"fc{index}.relu", Activation(ActivationFn.RELU))
        builder.add(f"fc{index}.dropout", Dropout(0.5))
    builder.add("fc3", Dense(IMAGENET_CLASSES))
    builder.add("softmax", Activation(ActivationFn.SOFTMAX))
    return builder.build()


def _conv_bn(
    builder: _GraphBuilder,
    prefix: str,
    kernel: int,
    filters: int,
    stride: int = 1,
    relu: bool = True,
) -> str:
    builder.add(
        f"{prefix}conv",
        Conv2D(
            kernel,
            kernel,
            filters,
            stride=stride,
            padding=Padding.same(),
            use_bias=False,
        ),
    )
    last = builder.add(f"{prefix}bn", BatchNorm())
    if relu:
        last = builder.add(f"{prefix}relu", Activation(ActivationFn.RELU))
    return last


def _stem(builder: _GraphBuilder) -> None:
    _conv_bn(builder, "stem.", 7, 64, stride=2)
    builder.add(
        "stem.pool",
        Pool2D(PoolMode.MAX, 3, 3, stride=2, padding=Padding.explicit(1, 1)),
    )


def _head(builder: _GraphBuilder) -> None:
    builder.add("avgpool", GlobalPool(PoolMode.AVG))
    builder.add("flatten", Flatten())
    builder.add("fc", Dense(IMAGENET_CLASSES))
    builder.add("softmax", Activation(ActivationFn.SOFTMAX))


def _block(
    builder: _GraphBuilder,
    prefix: str,
    width: int,
    stride: int,
    in_channels: int,
    bottleneck: bool,
    shortcut: bool,
) -> int:
    """Emit one residual (or plain) block and return its output channel count."""
    block_input = builder.last
    if bottleneck:
        out_channels = width * BOTTLENECK_EXPANSION
        _conv_bn(builder, f"{prefix}1.", 1, width)
        _conv_bn(builder, f"{prefix}2.", 3, width, stride=stride)
        main = _conv_bn(builder, f"{prefix}3.", 1, out_channels, relu=not shortcut)
    else:
        out_channels = width
        _conv_bn(builder, f"{prefix}1.", 3, width, stride=stride)
        main = _conv_bn(builder, f"{prefix}2.", 3, width, relu=not shortcut)

    if not shortcut:
        return out_channels

    if stride != 1 or in_channels != out_channels:
        builder.last = block_input
        side = _conv_bn(
            builder, f"{prefix}downsample.", 1, out_channels, stride=stride, relu=False
        )
    else:
        side = builder.add(f"{prefix}shortcut", Identity(), (block_input,))
    builder.add(f"{prefix}add", Add(), (main, side))
    builder.add(f"{prefix}out", Activation(ActivationFn.RELU))
    return out_channels


def _residual_family(name: str, depth: int, shortcut: bool) -> NetworkGraph:
    if depth not in RESNET_CONFIGS:
        raise ZooError(
            i18n["zoo"]["bad_depth"].format(
                family=name, depth=depth, choices=sorted(RESNET_CONFIGS)
            )
        )
    bottleneck, blocks = RESNET_CONFIGS[depth]
    builder = _GraphBuilder(f"{name}{depth}", IMAGENET_SHAPE)
    _stem(builder)
    channels = 64
    for stage, (width, count) in enumerate(zip(STAGE_WIDTHS, blocks), start=1):
        for index in range(count):
            stride = 2 if stage > 1 and index == 0 else 1
            channels = _block(
                builder,
                f"layer{stage}.{index}.",
                width,
                stride,
                channels,
                bottleneck,
                shortcut,
            )
    _head(builder)
    return builder.build()


def build_resnet(depth: int) -> NetworkGraph:
    """
    Standard ImageNet ResNet.

    Identity shortcuts are Identity nodes, projection shortcuts a 1x1
    convolution with batch norm, and every merge an Add followed by ReLU.
    """
    return _residual_family("resnet", depth, shortcut=True)


def build_plainnet(depth: int) -> NetworkGraph:
    """The ResNet of the same depth with every shortcut and Add removed."""
    return _residual_family("plainnet", depth, shortcut=False)


def _registry() -> Dict[str, Callable[[], NetworkGraph]]:
    models: Dict[str, Callable[[], NetworkGraph]] = {
        "mlp": build_mlp,
        "autoencoder": build_autoencoder,
    }
    for variant in VGG_CONFIGS:
        models[f"vgg{variant}"] = lambda v=variant: build_vgg(v)
        models[f"vgg{variant}_bn"] = lambda v=variant: build_vgg(v, batch_norm=True)
    for depth in RESNET_CONFIGS:
        models[f"resnet{depth}"] = lambda d=depth: build_resnet(d)
        models[f"plainnet{depth}"] = lambda d=depth: build_plainnet(d)
    return models


MODELS = _registry()


def normalize_name(name: str) -> str:
    """Map spellings like 'ResNet-18' or 'VGG 16 BN' onto registry keys."""
    key = re.sub(r"[\s\-_]", "", name.strip().lower())
    if key.startswith("vgg") and key.endswith("bn"):
        key = key[: -len("bn")] + "_bn"
    return key


def resolve_model(name: str) -> NetworkGraph:
    key = normalize_name(name)
    if key not in MODELS:
        raise UnknownModelError(i18n["zoo"]["unknown_model"].format(name=name))
    return MODELS[key]()


def model_names() -> List[str]:
    return list(MODELS)
