"""Multi-locator execution and vote aggregation."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from similo.dom import DomTree, Node
from similo.locators import KIND_ORDER, LocatorSet
from similo.xpath import XPathString, element_path, evaluate, tolerant_match

VARIANT_WORST = "worst"
VARIANT_BEST = "best"
VARIANT_WEIGHTED = "weighted"
VARIANT_LIMIT = "limit"

VOTING_VARIANTS = (VARIANT_WORST, VARIANT_BEST, VARIANT_WEIGHTED, VARIANT_LIMIT)

# Default per-kind vote weights: single-locator located rates on the
# reference corpus, normalized to [0, 1].
DEFAULT_KIND_WEIGHTS = {
    "absolute": 0.21,
    "id_relative": 0.41,
    "selenium_ide": 0.53,
    "montoto": 0.54,
    "robula_plus": 0.65,
}


@dataclass
class LocatorOutcome:
    kind: str
    matched: list  # matched elements, document order
    elapsed_us: float = 0.0
    error: Optional[str] = None

    @property
    def usable(self) -> bool:
        return len(self.matched) == 1


def execute_locators(locator_set: LocatorSet, new_tree: DomTree) -> list[LocatorOutcome]:
    """Evaluate every locator on the new tree; failures become zero-match
    outcomes instead of aborting the set."""
    outcomes = []
    for locator in locator_set.locators:
        start = time.perf_counter()
        try:
            matched = evaluate(new_tree, locator.expr)
            error = None
        except ValueError as exc:
            matched = []
            error = str(exc)
        elapsed_us = (time.perf_counter() - start) * 1e6
        outcomes.append(LocatorOutcome(locator.kind, matched, elapsed_us, error))
    return outcomes


def vote(
    outcomes: Sequence[LocatorOutcome],
    variant: str,
    kind_weights: Optional[Mapping[str, float]] = None,
    kind_order: Sequence[str] = KIND_ORDER,
) -> Optional[Node]:
    """Aggregate usable outcomes into one winner, or None when nothing is
    usable.

    Unweighted variants give one vote per usable locator; ties are broken by
    the fixed kind order over each element's supporters: best-order picks
    the element backed earliest in that order, worst-order the one backed
    latest. The weighted variant votes with per-kind weights and breaks ties
    by document order.
    """
    if variant == VARIANT_LIMIT:
        raise ValueError("theoretical limit is not a voting procedure; use theoretical_limit()")
    if variant not in (VARIANT_WORST, VARIANT_BEST, VARIANT_WEIGHTED):
        raise ValueError(f"unknown voting variant {variant!r}")
    if variant == VARIANT_WEIGHTED:
        weights = dict(DEFAULT_KIND_WEIGHTS if kind_weights is None else kind_weights)
        for outcome in outcomes:
            if outcome.usable and weights.get(outcome.kind, 0) <= 0:
                raise ValueError(f"weighted voting requires a positive weight for {outcome.kind!r}")

    order_index = {kind: i for i, kind in enumerate(kind_order)}
    votes: dict[int, float] = {}
    supporters: dict[int, list[int]] = {}
    element_by_id: dict[int, Node] = {}
    for outcome in outcomes:
        if not outcome.usable:
            continue
        element = outcome.matched[0]
        key = id(element)
        element_by_id[key] = element
        weight = 1.0 if variant != VARIANT_WEIGHTED else weights[outcome.kind]
        votes[key] = votes.get(key, 0.0) + weight
        supporters.setdefault(key, []).append(order_index.get(outcome.kind, len(order_index)))

    if not votes:
        return None
    top = max(votes.values())
    tied = [key for key, total in votes.items() if total == top]
    if len(tied) == 1:
        return element_by_id[tied[0]]

    if variant == VARIANT_BEST:
        chosen = min(tied, key=lambda k: (tuple(sorted(supporters[k])), element_by_id[k].index))
    elif variant == VARIANT_WORST:
        chosen = max(tied, key=lambda k: (tuple(sorted(supporters[k])), -element_by_id[k].index))
    else:
        chosen = min(tied, key=lambda k: element_by_id[k].index)
    return element_by_id[chosen]


def theoretical_limit(outcomes: Sequence[LocatorOutcome], oracle: XPathString) -> bool:
    """True when any usable outcome tolerantly matches the oracle path."""
    for outcome in outcomes:
        if outcome.usable and tolerant_match(element_path(outcome.matched[0]), oracle):
            return True
    return False
