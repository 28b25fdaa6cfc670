import threading
import time

import pytest

from archmetrics.utils.workers import ordered_map


def test_results_keep_input_order() -> None:
    """Verify that slow early items do not reorder the results."""

    def slow_first(item: int) -> int:
        time.sleep(0.05 if item == 0 else 0)
        return item * item

    assert ordered_map(slow_first, [0, 1, 2, 3, 4], workers=4) == [0, 1, 4, 9, 16]


def test_single_worker_runs_inline() -> None:
    threads = set()

    def record(item: int) -> int:
        threads.add(threading.get_ident())
        return item

    assert ordered_map(record, [1, 2, 3], workers=1) == [1, 2, 3]
    assert threads == {threading.get_ident()}


def test_empty_input() -> None:
    assert ordered_map(str, [], workers=3) == []


@pytest.mark.parametrize("workers", [1, 3])
def test_errors_propagate(workers: int) -> None:
    def explode(item: int) -> int:
        if item == 2:
            raise ValueError("boom")
        return item

    with pytest.raises(ValueError, match="boom"):
        ordered_map(explode, [1, 2, 3], workers=workers)


def test_default_worker_count_comes_from_settings(mocker) -> None:  # noqa: ANN001
    mocker.patch("archmetrics.utils.workers.settings.WORKERS", 1)
    threads = set()

    def record(item: int) -> int:
        threads.add(threading.get_ident())
        return item

    ordered_map(record, [1, 2, 3])
    assert threads == {threading.get_ident()}
