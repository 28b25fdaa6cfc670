import pytest

from archmetrics.algebra.summary import global_metrics
from archmetrics.analysis.compare import COMPARE_HEADER, compare_models
from archmetrics.errors import UnknownModelError
from archmetrics.zoo.builders import build_resnet


def test_rows_keep_the_requested_order() -> None:
    """Verify that rows come back in argument order, whatever the pool does."""
    names = ["VGG-11", "mlp", "ResNet-18", "autoencoder"]
    rows = compare_models(names, workers=3)
    assert [row.model for row in rows] == ["vgg11", "mlp", "resnet18", "autoencoder"]


def test_row_values() -> None:
    (row,) = compare_models(["resnet18"], workers=1)
    expected = global_metrics(build_resnet(18))
    assert row.gcip == expected.gcip
    assert row.gcc_log2 == expected.gcc_log2
    assert row.params == 11_689_512
    assert list(row.to_json()) == list(COMPARE_HEADER)


def test_unknown_name_fails_before_any_work(mocker) -> None:  # noqa: ANN001
    """Verify that every name is resolved before a single model is analyzed."""
    spy = mocker.patch("archmetrics.analysis.compare.global_metrics")
    with pytest.raises(UnknownModelError):
        compare_models(["resnet18", "alexnet"])
    spy.assert_not_called()
