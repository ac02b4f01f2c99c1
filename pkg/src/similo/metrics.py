"""Comparison operators for locator parameters. All return values in [0, 1]."""

from __future__ import annotations

import math
from typing import Iterable, Tuple

from similo.kernels import levenshtein

# Normalizations for the edit-distance similarity. "max" divides the distance
# by the longer length; "ned2" is the generalized-distance variant
# 2L/(|a|+|b|+L). "max" is the default: it reproduces the reference distances
# for evolved XPath pairs, which "ned2" overshoots.
NORMALIZATIONS = ("max", "ned2")
DEFAULT_NORMALIZATION = "max"

# Past this top-left-corner pixel distance two elements are unrelated.
LOCATION_RANGE_PX = 100.0


def string_similarity(a: str, b: str, normalization: str = DEFAULT_NORMALIZATION) -> float:
    """Normalized Levenshtein similarity; both blank → 1, one blank → 0."""
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    distance = levenshtein(a, b)
    if normalization == "max":
        return 1.0 - distance / max(len(a), len(b))
    if normalization == "ned2":
        return 1.0 - 2.0 * distance / (len(a) + len(b) + distance)
    raise ValueError(f"unknown normalization {normalization!r}")


def exact_similarity(a: str, b: str) -> float:
    """1 when equal ignoring case and neither side is blank, else 0."""
    if not a or not b:
        return 0.0
    return 1.0 if a.lower() == b.lower() else 0.0


def location_similarity(p1: Tuple[float, float], p2: Tuple[float, float]) -> float:
    """Linear falloff with top-left distance, zero beyond 100 pixels."""
    distance = math.dist(p1, p2)
    return max(0.0, 1.0 - distance / LOCATION_RANGE_PX)


def scalar_similarity(v1: float, v2: float) -> float:
    """Relative difference similarity for area and shape; both zero → 1."""
    if v1 == 0 and v2 == 0:
        return 1.0
    return 1.0 - min(1.0, abs(v1 - v2) / max(v1, v2))


def word_set_similarity(a: Iterable[str], b: Iterable[str]) -> float:
    """Shared-word ratio |A∩B| / max(|A|,|B|); both empty → 0."""
    set_a, set_b = set(a), set(b)
    if not set_a or not set_b:
        return 0.0
    return len(set_a & set_b) / max(len(set_a), len(set_b))
