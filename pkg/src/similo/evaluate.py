"""Localization experiment over paired page snapshots.

For every target: generate the single-locators on the old page, execute them
on the new page, aggregate them through the voting variants, and run the
similarity ranking; classify each attempt Located/Non-Located against the
tolerant path oracle, and time the similarity scoring phase.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from similo.capture import BenchmarkCase, load_benchmark, resolve_overlays
from similo.config import Config
from similo.dom import candidates, parse_html
from similo.locators import DISPLAY_NAMES, KIND_ORDER, gen_all
from similo.scoring import rank_candidates
from similo.snapshot import extract_snapshot
from similo.voting import (
    VARIANT_BEST,
    VARIANT_WEIGHTED,
    VARIANT_WORST,
    execute_locators,
    theoretical_limit,
    vote,
)
from similo.xpath import element_path, evaluate, tolerant_match

LML_APPROACHES = ("lml_worst", "lml_best", "lml_weighted", "lml_limit")
APPROACHES = KIND_ORDER + LML_APPROACHES + ("similo",)

APPROACH_DISPLAY = dict(DISPLAY_NAMES)
APPROACH_DISPLAY.update(
    {
        "lml_worst": "LML (unweighted worst order)",
        "lml_best": "LML (unweighted best order)",
        "lml_weighted": "LML (weighted)",
        "lml_limit": "LML (theoretical limit)",
        "similo": "Similo",
    }
)

LOCATED = "Located"
NON_LOCATED = "NonLocated"


@dataclass
class LocalizationResult:
    site: str
    approach: str
    target_old_xpath: str
    located: bool
    chosen_xpath: Optional[str]
    elapsed_us: float
    candidate_count: int = 0
    error: Optional[str] = None

    @property
    def outcome(self) -> str:
        return LOCATED if self.located else NON_LOCATED


@dataclass
class BenchmarkReport:
    totals: dict  # approach → {located, non_located, non_located_pct}
    per_site: dict  # site → approach → {located, non_located}
    timing: dict  # total_ms, per_target_mean_ms, per_comparison_mean_ms, ...
    repeats: int
    errors: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "totals": self.totals,
            "per_site": self.per_site,
            "timing": self.timing,
            "repeats": self.repeats,
            "errors": list(self.errors),
        }

    def to_table(self) -> str:
        lines = []
        header = f"{'Locator':<34} {'Located':>8} {'Non-Located':>12} {'Non-Located %':>14}"
        lines.append(header)
        lines.append("-" * len(header))
        for approach in APPROACHES:
            if approach not in self.totals:
                continue
            row = self.totals[approach]
            lines.append(
                f"{APPROACH_DISPLAY[approach]:<34} {row['located']:>8} "
                f"{row['non_located']:>12} {row['non_located_pct']:>14.1f}"
            )
        if self.timing.get("targets"):
            t = self.timing
            lines.append("")
            lines.append(
                "Similarity timing: "
                f"{t['total_ms']:.2f} ms over {t['targets']} targets "
                f"({t['per_target_mean_ms']:.3f} ms/target, "
                f"{t['per_comparison_mean_ms']:.4f} ms/comparison, "
                f"mean of {self.repeats} run(s))"
            )
        if self.errors:
            lines.append("")
            lines.append("Case errors:")
            lines.extend(f"  {err}" for err in self.errors)
        return "\n".join(lines)


def _selected(config: Config) -> tuple:
    if config.approaches is None:
        return APPROACHES
    return tuple(a for a in APPROACHES if a in config.approaches)


def _failure_results(case, target, approaches, message) -> list[LocalizationResult]:
    return [
        LocalizationResult(case.site, approach, target.old_xpath, False, None, 0.0, error=message)
        for approach in approaches
    ]


def run_case(case: BenchmarkCase, config: Optional[Config] = None) -> list[LocalizationResult]:
    """Localization results for every target × selected approach of a case."""
    config = config or Config()
    approaches = _selected(config)
    need_locators = any(a != "similo" for a in approaches)
    need_similo = "similo" in approaches

    old_tree = parse_html(case.old_html)
    new_tree = parse_html(case.new_html)
    old_vis, old_geom = resolve_overlays(old_tree, case.old_capture) if case.old_capture else ({}, {})
    new_vis, new_geom = resolve_overlays(new_tree, case.new_capture) if case.new_capture else ({}, {})

    old_candidates = candidates(old_tree, visibility=old_vis or None)
    new_candidates = candidates(new_tree, visibility=new_vis or None)
    old_neighbor_source = [(n, old_geom.get(n)) for n in old_candidates]
    new_neighbor_source = [(n, new_geom.get(n)) for n in new_candidates]

    candidate_snaps = []
    if need_similo:
        candidate_snaps = [
            extract_snapshot(new_tree, n, new_geom.get(n), new_neighbor_source, config.neighbor_radius)
            for n in new_candidates
        ]

    results: list[LocalizationResult] = []
    for target in case.targets:
        try:
            matches = evaluate(old_tree, target.old_xpath)
        except ValueError as exc:
            results.extend(_failure_results(case, target, approaches, str(exc)))
            continue
        if len(matches) != 1:
            results.extend(
                _failure_results(
                    case, target, approaches, f"old_xpath resolved to {len(matches)} elements"
                )
            )
            continue
        el = matches[0]
        oracle = target.oracle_new_xpath

        if need_locators:
            locator_set = gen_all(old_tree, el, config.generator)
            outcomes = execute_locators(locator_set, new_tree)
            outcome_by_kind = {o.kind: o for o in outcomes}

            for kind in KIND_ORDER:
                if kind not in approaches:
                    continue
                outcome = outcome_by_kind.get(kind)
                if outcome is None:
                    results.append(
                        LocalizationResult(
                            case.site, kind, target.old_xpath, False, None, 0.0,
                            error="locator not generated (non-unique)",
                        )
                    )
                    continue
                chosen = element_path(outcome.matched[0]) if outcome.usable else None
                located = chosen is not None and tolerant_match(chosen, oracle)
                results.append(
                    LocalizationResult(
                        case.site, kind, target.old_xpath, located, chosen,
                        outcome.elapsed_us, error=outcome.error,
                    )
                )

            for variant, approach in (
                (VARIANT_WORST, "lml_worst"),
                (VARIANT_BEST, "lml_best"),
                (VARIANT_WEIGHTED, "lml_weighted"),
            ):
                if approach not in approaches:
                    continue
                start = time.perf_counter()
                winner = vote(outcomes, variant, config.kind_weights, config.kind_order)
                elapsed_us = (time.perf_counter() - start) * 1e6
                chosen = element_path(winner) if winner is not None else None
                located = chosen is not None and tolerant_match(chosen, oracle)
                results.append(
                    LocalizationResult(
                        case.site, approach, target.old_xpath, located, chosen, elapsed_us
                    )
                )

            if "lml_limit" in approaches:
                start = time.perf_counter()
                located = theoretical_limit(outcomes, oracle)
                elapsed_us = (time.perf_counter() - start) * 1e6
                chosen = None
                if located:
                    for outcome in outcomes:
                        if outcome.usable:
                            path = element_path(outcome.matched[0])
                            if tolerant_match(path, oracle):
                                chosen = path
                                break
                results.append(
                    LocalizationResult(
                        case.site, "lml_limit", target.old_xpath, located, chosen, elapsed_us
                    )
                )

        if need_similo:
            target_snap = extract_snapshot(
                old_tree, el, old_geom.get(el), old_neighbor_source, config.neighbor_radius
            )
            durations = []
            ranking = []
            for _ in range(max(1, config.repeats)):
                start = time.perf_counter()
                ranking = rank_candidates(
                    target_snap, candidate_snaps, config.weights,
                    config.threshold, config.normalization,
                )
                durations.append((time.perf_counter() - start) * 1e6)
            if ranking:
                chosen = element_path(new_candidates[ranking[0].index])
                located = tolerant_match(chosen, oracle)
            else:
                chosen = None
                located = False
            results.append(
                LocalizationResult(
                    case.site, "similo", target.old_xpath, located, chosen,
                    statistics.fmean(durations), candidate_count=len(candidate_snaps),
                )
            )
    return results


def run_benchmark(
    dataset: Union[str, Path, Sequence[BenchmarkCase]],
    config: Optional[Config] = None,
) -> BenchmarkReport:
    """Aggregate :func:`run_case` over a dataset directory or case list."""
    config = config or Config()
    errors: list[str] = []
    if isinstance(dataset, (str, Path)):
        cases, errors = load_benchmark(dataset)
    else:
        cases = list(dataset)

    results: list[LocalizationResult] = []
    for case in cases:
        results.extend(run_case(case, config))

    totals: dict = {}
    per_site: dict = {}
    for result in results:
        bucket = totals.setdefault(result.approach, {"located": 0, "non_located": 0})
        bucket["located" if result.located else "non_located"] += 1
        site_bucket = per_site.setdefault(result.site, {}).setdefault(
            result.approach, {"located": 0, "non_located": 0}
        )
        site_bucket["located" if result.located else "non_located"] += 1
    for bucket in totals.values():
        total = bucket["located"] + bucket["non_located"]
        bucket["non_located_pct"] = 100.0 * bucket["non_located"] / total if total else 0.0

    similo_results = [r for r in results if r.approach == "similo"]
    total_us = sum(r.elapsed_us for r in similo_results)
    comparisons = sum(r.candidate_count for r in similo_results)
    timing = {
        "targets": len(similo_results),
        "total_ms": total_us / 1000.0,
        "per_target_mean_ms": (total_us / len(similo_results) / 1000.0) if similo_results else 0.0,
        "per_comparison_mean_ms": (total_us / comparisons / 1000.0) if comparisons else 0.0,
        "comparisons": comparisons,
    }
    return BenchmarkReport(totals, per_site, timing, config.repeats, errors)
