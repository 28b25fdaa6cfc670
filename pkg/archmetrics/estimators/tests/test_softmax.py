import numpy as np
import pytest

from archmetrics.errors import DegenerateSampleError, EstimatorError
from archmetrics.estimators.oracles import softmax_power_oracle
from archmetrics.estimators.softmax import softmax_power_estimate


@pytest.mark.parametrize("length", [1000, 2000])
def test_estimate_tracks_delta_method(length: int) -> None:
    """Verify that the softmax ratio sits near sqrt(e - 1) / n."""
    result = softmax_power_estimate(vector_len=length, n_trials=50, seed=7)
    assert result.estimate == pytest.approx(softmax_power_oracle(length), rel=0.1)
    assert result.n_samples == 50 * length
    assert result.to_json()["distribution"] == "standard_normal"


def test_ratio_falls_with_length() -> None:
    """Verify that longer vectors spread the output thinner."""
    short = softmax_power_estimate(vector_len=200, n_trials=20, seed=1)
    long = softmax_power_estimate(vector_len=2000, n_trials=20, seed=1)
    assert long.estimate < short.estimate / 5


def test_deterministic() -> None:
    first = softmax_power_estimate(vector_len=500, n_trials=10, seed=4)
    assert softmax_power_estimate(vector_len=500, n_trials=10, seed=4) == first


@pytest.mark.parametrize("length,trials", [(1, 10), (100, 0)])
def test_bad_arguments(length: int, trials: int) -> None:
    with pytest.raises(EstimatorError):
        softmax_power_estimate(vector_len=length, n_trials=trials)


def test_constant_inputs_are_degenerate(mocker) -> None:  # noqa: ANN001
    """Verify that constant input vectors are reported instead of divided by."""
    mocker.patch(
        "archmetrics.estimators.softmax._draw_inputs",
        side_effect=lambda rng, n_trials, vector_len: np.ones((n_trials, vector_len)),
    )
    with pytest.raises(DegenerateSampleError):
        softmax_power_estimate(vector_len=10, n_trials=3)
