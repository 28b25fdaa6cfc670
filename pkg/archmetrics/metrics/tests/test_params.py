import pytest

from archmetrics.graph.models import (
    BatchNorm,
    Conv2D,
    ConvTranspose2D,
    Dense,
    Flatten,
    GlobalPool,
    Padding,
)
from archmetrics.metrics.params import count_params
from archmetrics.utils.test_helpers import create_chain, create_residual_block
from archmetrics.zoo.builders import build_mlp, build_resnet, build_vgg


def test_dense_alone() -> None:
    """Verify (d_in + 1) * d_out for a single dense layer."""
    assert count_params(create_chain([Dense(128)], (784,))) == 100_480


@pytest.mark.parametrize(
    "kinds,input_shape,expected",
    [
        ([Conv2D(3, 3, 8)], (10, 10, 3), (27 + 1) * 8),
        ([Conv2D(3, 3, 8, use_bias=False)], (10, 10, 3), 27 * 8),
        ([ConvTranspose2D(2, 2, 4, stride=2)], (4, 4, 2), (8 + 1) * 4),
        ([Conv2D(1, 1, 6, padding=Padding.same()), BatchNorm()], (4, 4, 2), 18 + 12),
        ([GlobalPool(), Flatten(), Dense(5, use_bias=False)], (3, 3, 7), 35),
    ],
)
def test_layer_counts(kinds: list, input_shape: tuple, expected: int) -> None:
    """Verify the trainable parameters of each layer kind."""
    assert count_params(create_chain(kinds, input_shape)) == expected


def test_residual_block_counts_both_convs() -> None:
    """Verify that shortcuts and merges hold no parameters."""
    graph = create_residual_block(channels=4, size=8)
    assert count_params(graph) == 2 * (9 * 4 * 4) + 2 * (2 * 4)


def test_mlp() -> None:
    """Verify the default MLP count."""
    assert count_params(build_mlp()) == 101_770


@pytest.mark.parametrize(
    "build,expected",
    [
        (lambda: build_resnet(18), 11_689_512),
        (lambda: build_vgg(16), 138_357_544),
    ],
)
def test_published_counts(build, expected: int) -> None:  # noqa: ANN001
    """Verify that reference architectures match their published counts."""
    assert count_params(build()) == expected
