"""Command-line interface: extract, locate, bench."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from similo.capture import load_capture, resolve_overlays
from similo.config import Config, load_config, parse_weight_overrides
from similo.dom import candidates, load_html
from similo.evaluate import APPROACHES, LML_APPROACHES, run_benchmark
from similo.scoring import rank_candidates
from similo.snapshot import PARAMETERS, extract_snapshot
from similo.voting import VOTING_VARIANTS
from similo.xpath import element_path, evaluate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="similo",
        description="Similarity-based web element localization and its locator baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="config file (key = value lines)")
        p.add_argument("--format", choices=("table", "json"), help="output format")
        p.add_argument("--weights", help="inline weight overrides, e.g. tag=1.5,id=0.5")
        p.add_argument("--threshold", type=float, help="lowest acceptable similarity score")

    p_extract = sub.add_parser("extract", help="print element snapshots for a page")
    p_extract.add_argument("page", help="HTML file")
    p_extract.add_argument("--xpath", help="extract only the element at this xpath")
    p_extract.add_argument("--capture", help="page capture JSON with geometry/visibility")
    common(p_extract)

    p_locate = sub.add_parser("locate", help="rank new-page candidates against an old-page target")
    p_locate.add_argument("old_html")
    p_locate.add_argument("old_xpath")
    p_locate.add_argument("new_html")
    p_locate.add_argument("--old-capture", help="capture JSON for the old page")
    p_locate.add_argument("--new-capture", help="capture JSON for the new page")
    p_locate.add_argument("--top-k", type=int, help="matches to print (default 10)")
    common(p_locate)

    p_bench = sub.add_parser("bench", help="run the localization benchmark on a dataset")
    p_bench.add_argument("dataset", help="dataset directory (one sub-directory per site)")
    p_bench.add_argument("--approach", help="comma list restricting approaches, e.g. similo")
    p_bench.add_argument("--variant", choices=VOTING_VARIANTS, help="run only this voting variant")
    p_bench.add_argument("--repeats", type=int, help="timing repetitions (default 3)")
    p_bench.add_argument("--out", default="similo_report.json", help="report file path")
    common(p_bench)

    return parser


def _load_configuration(args) -> Config:
    config = Config()
    if args.config:
        config = load_config(args.config, config)
    if getattr(args, "format", None):
        config.output_format = args.format
    if getattr(args, "weights", None):
        config.weights = config.weights.replace(parse_weight_overrides(args.weights))
    if getattr(args, "threshold", None) is not None:
        config.threshold = args.threshold
    if getattr(args, "top_k", None) is not None:
        config.top_k = args.top_k
    if getattr(args, "repeats", None) is not None:
        config.repeats = args.repeats
    if getattr(args, "approach", None):
        wanted = tuple(a.strip() for a in args.approach.split(",") if a.strip())
        unknown = [a for a in wanted if a not in APPROACHES]
        if unknown:
            raise ValueError(f"unknown approach(es): {', '.join(unknown)}")
        config.approaches = wanted
    elif getattr(args, "variant", None):
        kept = "lml_limit" if args.variant == "limit" else f"lml_{args.variant}"
        config.approaches = tuple(
            a for a in APPROACHES if a not in LML_APPROACHES or a == kept
        )
    return config


def _page_context(html_path, capture_path, neighbor_radius):
    tree = load_html(html_path)
    visibility, geometry = {}, {}
    if capture_path:
        visibility, geometry = resolve_overlays(tree, load_capture(capture_path))
    nodes = candidates(tree, visibility=visibility or None)
    neighbor_source = [(n, geometry.get(n)) for n in nodes]
    snaps = [
        extract_snapshot(tree, n, geometry.get(n), neighbor_source, neighbor_radius)
        for n in nodes
    ]
    return tree, nodes, snaps, geometry, neighbor_source


def _print_snapshot(snap, indent=""):
    data = snap.to_dict()
    for name in PARAMETERS:
        print(f"{indent}{name:<18} {data[name]!r}")


def cmd_extract(args) -> int:
    config = _load_configuration(args)
    tree, nodes, snaps, geometry, neighbor_source = _page_context(
        args.page, args.capture, config.neighbor_radius
    )
    if args.xpath:
        matches = evaluate(tree, args.xpath)
        if len(matches) != 1:
            count = "no match" if not matches else f"{len(matches)} matches"
            print(f"error: xpath resolved to {count}: {args.xpath}", file=sys.stderr)
            return 2
        el = matches[0]
        snaps = [extract_snapshot(tree, el, geometry.get(el), neighbor_source, config.neighbor_radius)]
        nodes = [el]
    if config.output_format == "json":
        print(json.dumps([s.to_dict() for s in snaps], indent=2))
    else:
        for node, snap in zip(nodes, snaps):
            print(element_path(node))
            _print_snapshot(snap, indent="  ")
            print()
    return 0


def cmd_locate(args) -> int:
    config = _load_configuration(args)
    old_tree, _, _, old_geom, old_neighbor_source = _page_context(
        args.old_html, args.old_capture, config.neighbor_radius
    )
    matches = evaluate(old_tree, args.old_xpath)
    if len(matches) != 1:
        count = "no match" if not matches else f"{len(matches)} matches"
        print(f"error: old_xpath resolved to {count}: {args.old_xpath}", file=sys.stderr)
        return 2
    el = matches[0]
    target = extract_snapshot(
        old_tree, el, old_geom.get(el), old_neighbor_source, config.neighbor_radius
    )

    _, new_nodes, new_snaps, _, _ = _page_context(
        args.new_html, args.new_capture, config.neighbor_radius
    )
    ranking = rank_candidates(
        target, new_snaps, config.weights, config.threshold, config.normalization
    )
    shown = ranking[: config.top_k]

    if config.output_format == "json":
        payload = [
            {
                "rank": m.rank,
                "score": m.score,
                "xpath": element_path(new_nodes[m.index]),
                "similarities": m.breakdown.similarities,
                "contributions": m.breakdown.contributions,
            }
            for m in shown
        ]
        print(json.dumps(payload, indent=2))
    else:
        if not shown:
            print("no acceptable match")
        for m in shown:
            print(f"#{m.rank}  score={m.score:.4f}  {element_path(new_nodes[m.index])}")
            for name in PARAMETERS:
                sim = m.breakdown.similarities[name]
                contribution = m.breakdown.contributions[name]
                print(f"    {name:<18} sim={sim:.4f}  weighted={contribution:.4f}")
            print()
    return 0 if ranking else 1


def cmd_bench(args) -> int:
    config = _load_configuration(args)
    report = run_benchmark(args.dataset, config)
    if config.output_format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_table())
    Path(args.out).write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    if report.errors:
        return 1
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return cmd_extract(args)
        if args.command == "locate":
            return cmd_locate(args)
        if args.command == "bench":
            return cmd_bench(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
