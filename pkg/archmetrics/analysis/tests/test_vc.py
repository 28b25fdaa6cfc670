import math

import pytest

from archmetrics.analysis.vc import (
    SWEEP_LAYERS,
    SWEEP_WIDTHS,
    VC_HEADER,
    vc_bound,
    vc_sweep,
)
from archmetrics.errors import ArchMetricsError


@pytest.mark.parametrize(
    "weights,layers,expected",
    [(2, 1, 2.0), (1024, 3, 1024 * 3 * 10.0), (101_770, 2, 3.386e6)],
)
def test_vc_bound(weights: int, layers: int, expected: float) -> None:
    """Verify W * L * log2(W)."""
    assert vc_bound(weights, layers) == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("weights,layers", [(1, 2), (0, 1), (10, 0)])
def test_vc_bound_domain(weights: int, layers: int) -> None:
    with pytest.raises(ArchMetricsError):
        vc_bound(weights, layers)


def test_default_grid() -> None:
    assert SWEEP_WIDTHS == (16, 32, 64, 128, 256, 512, 1024)
    assert SWEEP_LAYERS == (2, 3, 4, 5)


def test_sweep_rows() -> None:
    """Verify the sweep over square MLPs of the requested sizes."""
    rows = vc_sweep(widths=(16, 32, 64), layer_counts=(2, 3))
    assert [(row.width, row.layers) for row in rows] == [
        (16, 2),
        (32, 2),
        (64, 2),
        (16, 3),
        (32, 3),
        (64, 3),
    ]
    first = rows[0]
    assert first.params == 2 * (16 * 16 + 16)
    assert first.vc_bound == pytest.approx(544 * 2 * math.log2(544))
    assert first.ratio == pytest.approx(first.vc_bound / first.gcc_log2)
    assert len(first.as_tuple()) == len(VC_HEADER)


def test_bound_outgrows_cumulative_complexity() -> None:
    """Verify that the VC bound grows much faster with width than log2 GCC."""
    rows = vc_sweep()
    for layers in SWEEP_LAYERS:
        ratios = [row.ratio for row in rows if row.layers == layers]
        assert ratios == sorted(ratios)
        assert len(set(ratios)) == len(ratios)
