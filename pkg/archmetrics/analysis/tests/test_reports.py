import io
import json

import pytest

from archmetrics.analysis.reports import check_rows, dump_json, export_csv, format_value
from archmetrics.errors import ArchMetricsError


@pytest.mark.parametrize(
    "value,expected",
    [
        (None, ""),
        (True, "true"),
        (3, "3"),
        (0.1, "0.10000000000000001"),
        (1.0, "1"),
        (float("inf"), "inf"),
        ("resnet18", "resnet18"),
    ],
)
def test_format_value(value: object, expected: str) -> None:
    assert format_value(value) == expected


def test_header_only() -> None:
    """Verify that an empty table still gets its header line."""
    stream = io.StringIO()
    assert export_csv([], ("a", "b"), stream) == 0
    assert stream.getvalue() == "a,b\n"


def test_rows_use_lf_and_full_precision() -> None:
    stream = io.StringIO()
    count = export_csv([("x", 1 / 3, None), ("y, z", 2.5, 7)], ("n", "v", "w"), stream)
    assert count == 2
    assert stream.getvalue() == 'n,v,w\nx,0.33333333333333331,\n"y, z",2.5,7\n'
    assert float(stream.getvalue().splitlines()[1].split(",")[1]) == 1 / 3


def test_row_arity() -> None:
    with pytest.raises(ArchMetricsError):
        export_csv([(1, 2, 3)], ("a", "b"), io.StringIO())


def test_bad_row_writes_nothing() -> None:
    """Verify that a row of the wrong arity is caught before the header is out."""
    stream = io.StringIO()
    with pytest.raises(ArchMetricsError):
        export_csv([(1, 2), (1, 2, 3)], ("a", "b"), stream)
    assert stream.getvalue() == ""


def test_check_rows() -> None:
    check_rows([(1, 2), ("x", None)], ("a", "b"))
    with pytest.raises(ArchMetricsError, match="row 2 has 1 fields"):
        check_rows([(1, 2), (3,)], ("a", "b"))


def test_dump_json_keeps_insertion_order() -> None:
    text = dump_json({"z": 1, "a": [1.5, None], "m": "é"})
    assert text.endswith("}\n")
    assert list(json.loads(text)) == ["z", "a", "m"]
    assert "é" in text
