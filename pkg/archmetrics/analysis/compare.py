import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from archmetrics.algebra.propagation import PropagationConfig
from archmetrics.algebra.summary import global_metrics
from archmetrics.errors import UnknownModelError
from archmetrics.strings import translation
from archmetrics.utils.workers import ordered_map
from archmetrics.zoo.builders import MODELS, normalize_name

logger = logging.getLogger(__name__)

i18n = translation()

COMPARE_HEADER = ("model", "gcip", "log2_gcc", "gsc", "log2_gwc", "params")


@dataclass(frozen=True)
class ComparisonRow:
    model: str
    gcip: float
    gcc_log2: float
    gsc: float
    gwc_log2: Optional[float]
    params: int

    def as_tuple(self) -> Tuple[Any, ...]:
        return (
            self.model,
            self.gcip,
            self.gcc_log2,
            self.gsc,
            self.gwc_log2,
            self.params,
        )

    def to_json(self) -> Dict[str, Any]:
        return dict(zip(COMPARE_HEADER, self.as_tuple()))


def compare_models(
    names: Sequence[str],
    config: PropagationConfig = PropagationConfig(),
    workers: Optional[int] = None,
) -> List[ComparisonRow]:
    """Global metrics of zoo models, one row per name in the order given."""
    keys = []
    for name in names:
        key = normalize_name(name)
        if key not in MODELS:
            raise UnknownModelError(i18n["zoo"]["unknown_model"].format(name=name))
        keys.append(key)

    def analyze(key: str) -> ComparisonRow:
        metrics = global_metrics(MODELS[key](), config)
        return ComparisonRow(
            model=key,
            gcip=metrics.gcip,
            gcc_log2=metrics.gcc_log2,
            gsc=metrics.gsc,
            gwc_log2=metrics.gwc_log2,
            params=metrics.params,
        )

    rows = ordered_map(analyze, keys, workers)
    logger.debug(f"Compared {len(rows)} models")
    return rows
