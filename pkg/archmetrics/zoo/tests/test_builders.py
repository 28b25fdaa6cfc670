from functools import lru_cache

import pytest

from archmetrics.algebra.summary import GlobalMetrics, global_metrics
from archmetrics.errors import UnknownModelError, ZooError
from archmetrics.graph.models import ActivationFn, LayerType, TensorShape
from archmetrics.graph.validation import validate_graph
from archmetrics.metrics.params import count_params
from archmetrics.zoo.builders import (
    MODELS,
    build_autoencoder,
    build_mlp,
    build_plainnet,
    build_resnet,
    build_vgg,
    model_names,
    normalize_name,
    resolve_model,
)


@lru_cache(maxsize=None)
def metrics_for(key: str) -> GlobalMetrics:
    return global_metrics(MODELS[key]())


@pytest.mark.parametrize(
    "key,expected",
    [
        ("resnet18", 11_689_512),
        ("resnet34", 21_797_672),
        ("resnet50", 25_557_032),
        ("resnet101", 44_549_160),
        ("resnet152", 60_192_808),
        ("vgg11", 132_863_336),
        ("vgg13", 133_047_848),
        ("vgg16", 138_357_544),
        ("vgg19", 143_667_240),
        ("vgg11_bn", 132_868_840),
        ("vgg13_bn", 133_053_736),
        ("vgg16_bn", 138_365_992),
        ("vgg19_bn", 143_678_248),
        ("mlp", 101_770),
    ],
)
def test_published_parameter_counts(key: str, expected: int) -> None:
    """Verify that every reference graph has the published parameter count."""
    assert count_params(MODELS[key]()) == expected


@pytest.mark.parametrize("key", sorted(MODELS))
def test_every_model_is_admissible(key: str) -> None:
    """Verify that everything in the registry builds into a valid graph."""
    graph = MODELS[key]()
    assert validate_graph(graph).ok
    if key not in ("mlp", "autoencoder"):
        assert graph.name == key


def test_node_counts() -> None:
    assert len(build_resnet(18)) == 76
    assert len(build_plainnet(18)) == 57
    assert len(build_mlp()) == 4


def test_plainnet_has_no_merges() -> None:
    """Verify that the plain network drops every shortcut and Add."""
    plain = build_plainnet(34)
    assert plain.count([LayerType.ADD, LayerType.IDENTITY]) == 0
    resnet = build_resnet(34)
    assert resnet.count([LayerType.ADD]) == 16


def test_resnet_layout() -> None:
    """Verify the node naming of the stem, blocks and head."""
    graph = build_resnet(50)
    ids = [node.id for node in graph.nodes]
    assert ids[:5] == ["input", "stem.conv", "stem.bn", "stem.relu", "stem.pool"]
    assert ids[-4:] == ["avgpool", "flatten", "fc", "softmax"]
    assert "layer1.0.downsample.conv" in ids
    assert "layer1.1.shortcut" in ids
    assert graph.node("layer4.2.add").inputs == (
        "layer4.2.3.bn",
        "layer4.2.shortcut",
    )


def test_vgg_layout() -> None:
    graph = build_vgg(16, batch_norm=True)
    assert graph.count([LayerType.CONV2D]) == 13
    assert graph.count([LayerType.BATCH_NORM]) == 13
    assert graph.count([LayerType.DENSE]) == 3
    assert graph.node("softmax").inputs == ("fc3",)


def test_mlp_layout() -> None:
    graph = build_mlp([10, 20, 30, 5], ActivationFn.TANH)
    assert [node.id for node in graph.nodes] == [
        "input",
        "dense1",
        "act1",
        "dense2",
        "act2",
        "dense3",
    ]
    assert graph.input_shape == TensorShape.of(10)


@pytest.mark.parametrize(
    "build",
    [
        lambda: build_mlp([5]),
        lambda: build_mlp([5, 0]),
        lambda: build_autoencoder([8, 4, 2]),
        lambda: build_vgg(12),
        lambda: build_resnet(20),
        lambda: build_plainnet(200),
    ],
)
def test_builder_errors(build) -> None:  # noqa: ANN001
    with pytest.raises(ZooError):
        build()


class TestNames:
    @pytest.mark.parametrize(
        "name,key",
        [
            ("ResNet-18", "resnet18"),
            ("ResNet 152", "resnet152"),
            ("VGG 16 BN", "vgg16_bn"),
            ("vgg_19_bn", "vgg19_bn"),
            ("  MLP ", "mlp"),
            ("PlainNet-34", "plainnet34"),
        ],
    )
    def test_normalize(self, name: str, key: str) -> None:
        assert normalize_name(name) == key
        assert key in model_names()

    def test_resolve(self) -> None:
        assert resolve_model("ResNet-18").name == "resnet18"

    def test_unknown_model(self) -> None:
        with pytest.raises(UnknownModelError):
            resolve_model("resnet19")


class TestFamilyOrdering:
    def test_resnet_power_falls_with_depth(self) -> None:
        """Verify that deeper ResNets of the same block type have a lower GCIP."""
        for shallow, deep in [
            ("resnet18", "resnet34"),
            ("resnet50", "resnet101"),
            ("resnet101", "resnet152"),
        ]:
            assert metrics_for(deep).gcip < metrics_for(shallow).gcip
        # the wider bottleneck output is cancelled again by the wider classifier
        resnet34, resnet50 = metrics_for("resnet34"), metrics_for("resnet50")
        assert resnet34.gcip >= resnet50.gcip * (1 - 1e-9)

    def test_resnet_complexity_grows_with_depth(self) -> None:
        """Verify that cumulative and summed complexity grow with depth."""
        keys = ["resnet18", "resnet34", "resnet50", "resnet101", "resnet152"]
        gcc = [metrics_for(key).gcc_log2 for key in keys]
        gsc = [metrics_for(key).gsc for key in keys]
        assert gcc == sorted(gcc) and len(set(gcc)) == len(gcc)
        assert gsc == sorted(gsc) and len(set(gsc)) == len(gsc)

    def test_vgg_complexity_grows_with_depth(self) -> None:
        gsc = [metrics_for(f"vgg{variant}").gsc for variant in (11, 13, 16, 19)]
        assert gsc == sorted(gsc)

    @pytest.mark.parametrize("depth", [18, 34, 50, 101, 152])
    def test_shortcuts_keep_power(self, depth: int) -> None:
        """Verify that shortcuts preserve power without changing complexity much."""
        resnet = metrics_for(f"resnet{depth}")
        plain = metrics_for(f"plainnet{depth}")
        assert resnet.gcip > plain.gcip
        gap = abs(resnet.gcc_log2 - plain.gcc_log2) / plain.gcc_log2
        assert gap < 0.05

    def test_every_plainnet_is_below_every_resnet(self) -> None:
        depths = [18, 34, 50, 101, 152]
        best_plain = max(metrics_for(f"plainnet{depth}").gcip for depth in depths)
        worst_resnet = min(metrics_for(f"resnet{depth}").gcip for depth in depths)
        assert best_plain < worst_resnet

    def test_plainnet_complexity_grows_with_depth(self) -> None:
        keys = [f"plainnet{depth}" for depth in (18, 34, 50, 101, 152)]
        gcc = [metrics_for(key).gcc_log2 for key in keys]
        gsc = [metrics_for(key).gsc for key in keys]
        assert gcc == sorted(gcc) and len(set(gcc)) == len(gcc)
        assert gsc == sorted(gsc) and len(set(gsc)) == len(gsc)


class TestToyModels:
    def test_autoencoder_keeps_power(self) -> None:
        assert global_metrics(build_autoencoder([8, 8, 8])).gcip == 1.0
        assert global_metrics(build_autoencoder()).gcip == pytest.approx(1.0)

    def test_square_linear_mlp(self) -> None:
        """Verify that a square linear layer passes power unchanged."""
        result = global_metrics(build_mlp([4, 4], ActivationFn.LINEAR))
        assert result.gcip == 1.0
        assert result.gsc == 4.0
