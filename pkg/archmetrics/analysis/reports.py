"""Deterministic CSV and JSON writers shared by every command."""
import csv
import json
import math
from typing import IO, Any, Iterable, Sequence

from archmetrics.errors import ArchMetricsError
from archmetrics.strings import translation

i18n = translation()


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return format(value, ".17g")
    return str(value)


def check_rows(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> None:
    """Raise unless every row has one value per header column."""
    for number, row in enumerate(rows, start=1):
        if len(row) != len(header):
            raise ArchMetricsError(
                i18n["cli"]["row_arity"].format(
                    row=number, count=len(row), expected=len(header)
                )
            )


def export_csv(
    rows: Iterable[Sequence[Any]], header: Sequence[str], stream: IO[str]
) -> int:
    """
    Write `header` and `rows` as CSV with LF line endings.

    Floats carry 17 significant digits so a reader gets back the exact value.
    Nothing is written when a row has the wrong number of values. Returns the
    number of data rows written.
    """
    rows = list(rows)
    check_rows(rows, header)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([format_value(value) for value in row] for row in rows)
    return len(rows)


def dump_json(data: Any) -> str:
    """Indented JSON in the key order the caller built, newline-terminated."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
