"""
Intrinsic power and complexity constants for element-wise activations.

The non-linear entries satisfy p * c ~= 1; complexity is the inverse of the
power the activation lets through.
"""
import json
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Mapping

from archmetrics.errors import ConfigurationError
from archmetrics.graph.models import ActivationFn
from archmetrics.strings import translation

logger = logging.getLogger(__name__)

i18n = translation()

INVERSE_TOLERANCE = 1e-2


@dataclass(frozen=True)
class ActivationConstant:
    p: float
    c: float
    neutral: bool = False

    @property
    def inverse_drift(self) -> float:
        return abs(self.p * self.c - 1)


_RELU_LIKE = ActivationConstant(0.584, 1.713)

DEFAULT_ENTRIES: Dict[ActivationFn, ActivationConstant] = {
    ActivationFn.RELU: _RELU_LIKE,
    ActivationFn.ELU: _RELU_LIKE,
    ActivationFn.LEAKY_RELU: _RELU_LIKE,
    ActivationFn.SWISH: _RELU_LIKE,
    ActivationFn.TANH: ActivationConstant(0.628, 1.592),
    ActivationFn.SIGMOID: ActivationConstant(0.208, 4.802),
    ActivationFn.SOFTMAX: ActivationConstant(1.342e-05, 7.454e4),
    ActivationFn.LINEAR: ActivationConstant(1.0, 0.0, neutral=True),
}


@dataclass(frozen=True)
class ActivationConstants:
    entries: Mapping[ActivationFn, ActivationConstant] = field(
        default_factory=lambda: dict(DEFAULT_ENTRIES), hash=False
    )

    def __getitem__(self, fn: ActivationFn) -> ActivationConstant:
        return self.entries[ActivationFn(fn)]

    def with_overrides(
        self, overrides: Mapping[ActivationFn, ActivationConstant]
    ) -> "ActivationConstants":
        merged = dict(self.entries)
        merged.update(overrides)
        return replace(self, entries=merged)


DEFAULT_CONSTANTS = ActivationConstants()


def _parse_entry(path: str, name: str, raw: object) -> ActivationConstant:
    def bad() -> ConfigurationError:
        return ConfigurationError(
            i18n["metrics"]["constants_entry"].format(path=path, fn=name)
        )

    if not isinstance(raw, dict) or set(raw) != {"p", "c"}:
        raise bad()
    p, c = raw["p"], raw["c"]
    for value in (p, c):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise bad()
    if p <= 0 or c < 0:
        raise bad()
    return ActivationConstant(float(p), float(c), neutral=(p == 1 and c == 0))


def load_constants(
    path: str, base: ActivationConstants = DEFAULT_CONSTANTS
) -> ActivationConstants:
    """
    Read a JSON override file shaped like {"relu": {"p": 0.58, "c": 1.71}}.

    Entries that are not listed keep their defaults.
    """
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(
            i18n["metrics"]["constants_file"].format(path=path, error=e)
        )
    if not isinstance(document, dict):
        raise ConfigurationError(
            i18n["metrics"]["constants_file"].format(
                path=path, error="expected a JSON object"
            )
        )

    overrides: Dict[ActivationFn, ActivationConstant] = {}
    for name, raw in document.items():
        try:
            fn = ActivationFn(name)
        except ValueError:
            raise ConfigurationError(
                i18n["metrics"]["unknown_activation"].format(fn=name)
            )
        entry = _parse_entry(path, name, raw)
        if not entry.neutral and entry.inverse_drift > INVERSE_TOLERANCE:
            logger.warning(
                i18n["metrics"]["inverse_drift"].format(
                    fn=name, p=entry.p, c=entry.c, drift=entry.inverse_drift
                )
            )
        overrides[fn] = entry

    logger.info(f"Loaded {len(overrides)} activation constant override(s) from {path}")
    return base.with_overrides(overrides)
