"""Run configuration: paper-default constants, file parsing, flag merging.

Config files are plain ``key = value`` lines (``#`` comments allowed).
Dotted keys group related settings::

    threshold = 2.5
    neighbor_radius = 100
    normalization = max
    repeats = 3
    format = table
    top_k = 10
    weight.visible_text = 1.5
    vote.weight.robula_plus = 0.65
    generator.max_depth = 5
    generator.attribute_priority = id,name,class,title,alt,value
    generator.attribute_blacklist = style
    generator.blacklist_prefixes = on
    generator.exclude_href_with_query = true
    generator.attribute_set_limit = 6

Unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from similo.locators import KIND_ORDER, DEFAULT_GENERATOR_CONFIG, GeneratorConfig
from similo.metrics import DEFAULT_NORMALIZATION, NORMALIZATIONS
from similo.scoring import WeightVector
from similo.snapshot import DEFAULT_NEIGHBOR_RADIUS_PX, PARAMETERS
from similo.voting import DEFAULT_KIND_WEIGHTS

OUTPUT_FORMATS = ("table", "json")


@dataclass
class Config:
    weights: WeightVector = field(default_factory=WeightVector.default)
    threshold: Optional[float] = None
    neighbor_radius: float = DEFAULT_NEIGHBOR_RADIUS_PX
    normalization: str = DEFAULT_NORMALIZATION
    generator: GeneratorConfig = DEFAULT_GENERATOR_CONFIG
    kind_weights: dict = field(default_factory=lambda: dict(DEFAULT_KIND_WEIGHTS))
    kind_order: tuple = KIND_ORDER
    repeats: int = 3
    output_format: str = "table"
    top_k: int = 10
    approaches: Optional[tuple] = None  # None = every approach


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError(f"config key {key!r}: expected a boolean, got {value!r}")


def _parse_float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"config key {key!r}: expected a number, got {value!r}") from None


def _parse_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"config key {key!r}: expected an integer, got {value!r}") from None


def parse_config(text: str, base: Optional[Config] = None) -> Config:
    """Parse config text over ``base`` (default: paper defaults)."""
    config = base or Config()
    weight_overrides: dict = {}
    generator_kwargs: dict = {}
    kind_weights = dict(config.kind_weights)

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {line_no}: expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()

        if key == "threshold":
            config.threshold = _parse_float(value, key)
        elif key == "neighbor_radius":
            config.neighbor_radius = _parse_float(value, key)
        elif key == "normalization":
            if value not in NORMALIZATIONS:
                raise ValueError(f"config key {key!r}: expected one of {NORMALIZATIONS}")
            config.normalization = value
        elif key == "repeats":
            config.repeats = _parse_int(value, key)
        elif key == "format":
            if value not in OUTPUT_FORMATS:
                raise ValueError(f"config key {key!r}: expected one of {OUTPUT_FORMATS}")
            config.output_format = value
        elif key == "top_k":
            config.top_k = _parse_int(value, key)
        elif key.startswith("weight."):
            param = key[len("weight."):]
            if param not in PARAMETERS:
                raise ValueError(f"unknown config key {key!r}")
            weight_overrides[param] = _parse_float(value, key)
        elif key.startswith("vote.weight."):
            kind = key[len("vote.weight."):]
            if kind not in KIND_ORDER:
                raise ValueError(f"unknown config key {key!r}")
            kind_weights[kind] = _parse_float(value, key)
        elif key == "generator.max_depth":
            generator_kwargs["max_depth"] = _parse_int(value, key)
        elif key == "generator.attribute_set_limit":
            generator_kwargs["attribute_set_limit"] = _parse_int(value, key)
        elif key == "generator.attribute_priority":
            generator_kwargs["attribute_priority"] = tuple(
                v.strip() for v in value.split(",") if v.strip()
            )
        elif key == "generator.attribute_blacklist":
            generator_kwargs["attribute_blacklist"] = frozenset(
                v.strip() for v in value.split(",") if v.strip()
            )
        elif key == "generator.blacklist_prefixes":
            generator_kwargs["blacklist_prefixes"] = tuple(
                v.strip() for v in value.split(",") if v.strip()
            )
        elif key == "generator.exclude_href_with_query":
            generator_kwargs["exclude_href_with_query"] = _parse_bool(value, key)
        else:
            raise ValueError(f"unknown config key {key!r}")

    if weight_overrides:
        config.weights = config.weights.replace(weight_overrides)
    if generator_kwargs:
        config.generator = replace(config.generator, **generator_kwargs)
    config.kind_weights = kind_weights
    return config


def load_config(path, base: Optional[Config] = None) -> Config:
    return parse_config(Path(path).read_text(encoding="utf-8"), base)


def parse_weight_overrides(spec: str) -> dict:
    """Parse inline ``name=value,name=value`` weight overrides (CLI flag)."""
    overrides = {}
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, value = chunk.partition("=")
        name = name.strip()
        if not sep or name not in PARAMETERS:
            raise ValueError(f"bad weight override {chunk!r}")
        overrides[name] = _parse_float(value.strip(), name)
    return overrides
