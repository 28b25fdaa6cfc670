"""Published ImageNet accuracies and parameter counts, shipped as CSV."""
import csv
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from archmetrics import settings
from archmetrics.errors import ManifestError
from archmetrics.metrics.params import count_params
from archmetrics.strings import translation
from archmetrics.zoo.builders import MODELS, normalize_name

logger = logging.getLogger(__name__)

i18n = translation()

MANIFEST_HEADER = ("model", "family", "source", "top1", "top5", "params")
SOURCES = ("table1", "table2", "table3")
MISSING = {"", "NA", "NAN"}


@dataclass(frozen=True)
class ModelRecord:
    name: str
    family: str
    source: str
    top1: Optional[float]
    top5: Optional[float]
    params: Optional[int]

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        for value in (self.top1, self.top5):
            if value is not None and not 0 <= value <= 100:
                raise ValueError(f"accuracy {value} is not a percentage")
        if self.top1 is not None and self.top5 is not None and self.top1 > self.top5:
            raise ValueError(f"top1 {self.top1} exceeds top5 {self.top5}")
        if self.params is not None and self.params < 1:
            raise ValueError(f"params must be positive, got {self.params}")


def _optional_float(value: str) -> Optional[float]:
    if value.strip().upper() in MISSING:
        return None
    return float(value)


def _optional_int(value: str) -> Optional[int]:
    if value.strip().upper() in MISSING:
        return None
    # some counts are published in scientific notation
    return int(float(value))


def manifest_path() -> str:
    return os.path.join(settings.BASE_DIR, "zoo", "data", "manifest.csv")


def parse_manifest(lines: Iterable[str]) -> Tuple[ModelRecord, ...]:
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != MANIFEST_HEADER:
        raise ManifestError(
            i18n["zoo"]["manifest_row"].format(
                row=1, error=f"expected header {','.join(MANIFEST_HEADER)}"
            )
        )
    records = []
    for row in reader:
        try:
            records.append(
                ModelRecord(
                    name=row["model"].strip(),
                    family=row["family"].strip(),
                    source=row["source"].strip(),
                    top1=_optional_float(row["top1"]),
                    top5=_optional_float(row["top5"]),
                    params=_optional_int(row["params"]),
                )
            )
        except (AttributeError, TypeError, ValueError) as error:
            raise ManifestError(
                i18n["zoo"]["manifest_row"].format(row=reader.line_num, error=error)
            )
    return tuple(records)


@lru_cache(maxsize=None)
def load_manifest() -> Tuple[ModelRecord, ...]:
    """Every row of the three published tables, read once per process."""
    path = manifest_path()
    if not os.path.exists(path):
        raise ManifestError(i18n["zoo"]["manifest_missing"].format(path=path))
    with open(path, "r", newline="", encoding="utf-8") as f:
        records = parse_manifest(f)
    logger.debug(f"Loaded {len(records)} manifest records from {path}")
    return records


def zoo_key(record: ModelRecord) -> Optional[str]:
    """The registry name that builds this record's architecture, if any."""
    key = normalize_name(record.name)
    return key if key in MODELS else None


@lru_cache(maxsize=None)
def _built_params(key: str) -> int:
    return count_params(MODELS[key]())


def built_family_subset(
    records: Optional[Iterable[ModelRecord]] = None,
) -> List[Tuple[str, ModelRecord]]:
    """
    Rows whose architecture we can build, paired with the registry key.

    A row only counts when its published parameter count equals the count of
    the graph we build, so differently configured variants of the same name
    are left out.
    """
    records = load_manifest() if records is None else records
    subset = []
    for record in records:
        key = zoo_key(record)
        if key is None or record.params is None:
            continue
        if record.params != _built_params(key):
            logger.debug(
                f"Skipping {record.name} ({record.source}): published params"
                f" {record.params} differ from the built {key}"
            )
            continue
        subset.append((key, record))
    return subset
