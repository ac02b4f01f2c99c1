"""Weighted similarity scoring and candidate ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from similo.metrics import (
    DEFAULT_NORMALIZATION,
    exact_similarity,
    location_similarity,
    scalar_similarity,
    string_similarity,
    word_set_similarity,
)
from similo.snapshot import PARAMETERS, ElementSnapshot

# Parameters judged stable across releases carry the heavy weight.
HIGH_WEIGHT_PARAMETERS = frozenset({"tag", "name", "id", "visible_text", "neighbor_texts"})
HIGH_WEIGHT = 1.5
LOW_WEIGHT = 0.5

_EXACT_PARAMS = ("tag", "id", "name")
_STRING_PARAMS = ("class", "href", "alt", "absolute_xpath", "id_relative_xpath", "visible_text")
_SCALAR_PARAMS = ("area", "shape")


@dataclass(frozen=True)
class WeightVector:
    """Non-negative weight per locator parameter; all 14 must be present."""

    weights: Mapping[str, float]

    def __post_init__(self):
        missing = [p for p in PARAMETERS if p not in self.weights]
        if missing:
            raise ValueError(f"missing weights for: {', '.join(missing)}")
        unknown = [k for k in self.weights if k not in PARAMETERS]
        if unknown:
            raise ValueError(f"unknown weight parameters: {', '.join(unknown)}")
        negative = [k for k, v in self.weights.items() if v < 0]
        if negative:
            raise ValueError(f"negative weights for: {', '.join(negative)}")
        object.__setattr__(self, "weights", dict(self.weights))

    def __getitem__(self, name: str) -> float:
        return self.weights[name]

    @property
    def total(self) -> float:
        return sum(self.weights.values())

    @classmethod
    def default(cls) -> "WeightVector":
        return cls(
            {
                p: HIGH_WEIGHT if p in HIGH_WEIGHT_PARAMETERS else LOW_WEIGHT
                for p in PARAMETERS
            }
        )

    def replace(self, overrides: Mapping[str, float]) -> "WeightVector":
        merged = dict(self.weights)
        merged.update(overrides)
        return WeightVector(merged)

    def scaled(self, factor: float) -> "WeightVector":
        return WeightVector({k: v * factor for k, v in self.weights.items()})


@dataclass(frozen=True)
class SimilarityBreakdown:
    """Per-parameter similarities, their weighted contributions, and the sum."""

    similarities: Mapping[str, float]
    contributions: Mapping[str, float]
    total: float


@dataclass(frozen=True)
class RankedMatch:
    candidate: ElementSnapshot
    index: int  # position in the candidate list (document order)
    score: float
    breakdown: SimilarityBreakdown
    rank: int


def _parameter_similarity(
    name: str, target: ElementSnapshot, candidate: ElementSnapshot, normalization: str
) -> float:
    a = target.param(name)
    b = candidate.param(name)
    if name in _EXACT_PARAMS:
        return exact_similarity(a, b)
    if name == "is_button":
        return exact_similarity(str(a).lower(), str(b).lower())
    if name in _STRING_PARAMS:
        if not a or not b:
            return 0.0  # absent on either side carries no evidence
        return string_similarity(a, b, normalization)
    if name == "location":
        if a is None or b is None:
            return 0.0
        return location_similarity(a, b)
    if name in _SCALAR_PARAMS:
        if a is None or b is None:
            return 0.0
        return scalar_similarity(a, b)
    if name == "neighbor_texts":
        return word_set_similarity(a, b)
    raise ValueError(f"unknown parameter {name!r}")


def similarity_score(
    target: ElementSnapshot,
    candidate: ElementSnapshot,
    weights: WeightVector,
    normalization: str = DEFAULT_NORMALIZATION,
) -> SimilarityBreakdown:
    """Score one candidate against the target: Σ weight·similarity."""
    similarities = {}
    contributions = {}
    total = 0.0
    for name in PARAMETERS:
        weight = weights[name]
        sim = _parameter_similarity(name, target, candidate, normalization)
        similarities[name] = sim
        contributions[name] = weight * sim
        total += weight * sim
    return SimilarityBreakdown(similarities, contributions, total)


def rank_candidates(
    target: ElementSnapshot,
    candidates: Sequence[ElementSnapshot],
    weights: WeightVector,
    threshold: Optional[float] = None,
    normalization: str = DEFAULT_NORMALIZATION,
) -> list[RankedMatch]:
    """Full ranking, best first; ties broken by document order.

    With a threshold, candidates scoring below it are dropped; an empty
    result means no acceptable match.
    """
    scored = [
        (similarity_score(target, candidate, weights, normalization), index, candidate)
        for index, candidate in enumerate(candidates)
    ]
    scored.sort(key=lambda item: (-item[0].total, item[1]))
    matches = []
    for rank, (breakdown, index, candidate) in enumerate(scored, start=1):
        if threshold is not None and breakdown.total < threshold:
            break
        matches.append(RankedMatch(candidate, index, breakdown.total, breakdown, rank))
    return matches
