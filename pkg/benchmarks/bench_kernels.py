#!/usr/bin/env python3
"""Benchmark the compiled edit-distance kernel against the pure-Python twin.

Measures the raw kernel on representative string workloads, then the full
similarity-localization path (scoring + ranking) on a ~400-candidate page.

Run: python benchmarks/bench_kernels.py
"""

import random
import statistics
import time

from similo import _kernels_py

try:
    from similo import _kernels  # compiled

    KERNELS = [("cython", _kernels.levenshtein), ("python", _kernels_py.levenshtein)]
except ImportError:
    print("compiled extension not built; benchmarking the pure-Python kernel only\n")
    KERNELS = [("python", _kernels_py.levenshtein)]


def _xpath_like(rng, depth):
    tags = ["div", "span", "a", "li", "ul", "section", "article"]
    return "".join(f"/{rng.choice(tags)}[{rng.randint(1, 9)}]" for _ in range(depth))


def workloads():
    rng = random.Random(42)
    short_words = [
        ("".join(rng.choice("abcdefghij") for _ in range(rng.randint(3, 12))),
         "".join(rng.choice("abcdefghij") for _ in range(rng.randint(3, 12))))
        for _ in range(400)
    ]
    xpaths = [(_xpath_like(rng, rng.randint(8, 16)), _xpath_like(rng, rng.randint(8, 16)))
              for _ in range(400)]
    near_identical = []
    for _ in range(400):
        base = _xpath_like(rng, 12)
        mutated = base.replace("[1]", "[2]", 1)
        near_identical.append((base, mutated))
    return [
        ("short words (3-12 chars)", short_words),
        ("generated paths (8-16 steps)", xpaths),
        ("near-identical paths", near_identical),
    ]


def bench_kernel(func, pairs, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for a, b in pairs:
            func(a, b)
        times.append(time.perf_counter() - start)
    return min(times) / len(pairs) * 1e6  # µs per call


def bench_localization(repeats=5):
    """Full scoring/ranking pass per backend on a ~400-candidate page."""
    import importlib
    import os

    results = {}
    for backend in ("cython", "python"):
        os.environ["SIMILO_PURE_PYTHON"] = "1" if backend == "python" else "0"
        import similo.kernels as kernels_module

        importlib.reload(kernels_module)
        if kernels_module.BACKEND != backend:
            continue  # extension unavailable
        import similo.metrics as metrics_module

        importlib.reload(metrics_module)
        import similo.scoring as scoring_module

        importlib.reload(scoring_module)

        from similo.dom import candidates, parse_html
        from similo.snapshot import extract_snapshot

        rng = random.Random(7)
        parts = ["<html><body><div id='app'>"]
        for s in range(44):
            parts.append(f"<section id='s{s}'><ul>")
            for i in range(3):
                parts.append(
                    f"<li class='item'><a id='l-{s}-{i}' class='nav e{i}' href='/p/{s}/{i}'>"
                    f"<span>Entry {s} {rng.randint(0, 999)}</span></a></li>"
                )
            parts.append("</ul></section>")
        parts.append("</div></body></html>")
        tree = parse_html("".join(parts))
        nodes = candidates(tree)
        source = [(n, None) for n in nodes]
        snaps = [extract_snapshot(tree, n, None, source) for n in nodes]
        weights = scoring_module.WeightVector.default()
        target = snaps[len(snaps) // 2]

        scoring_module.rank_candidates(target, snaps, weights)  # warm-up
        times = []
        for _ in range(repeats):
            start = time.perf_counter()
            scoring_module.rank_candidates(target, snaps, weights)
            times.append(time.perf_counter() - start)
        results[backend] = (statistics.fmean(times) * 1000, len(snaps))
    os.environ.pop("SIMILO_PURE_PYTHON", None)
    return results


def main():
    print(f"{'workload':<32} " + "  ".join(f"{name:>12}" for name, _ in KERNELS))
    for label, pairs in workloads():
        row = [bench_kernel(func, pairs) for _, func in KERNELS]
        cells = "  ".join(f"{v:>9.2f} µs" for v in row)
        print(f"{label:<32} {cells}")
        if len(row) == 2 and row[0] > 0:
            print(f"{'':<32} {'speedup':>12}  {row[1] / row[0]:>9.1f}x")

    print("\nfull localization (scoring + ranking, one target):")
    for backend, (ms, n) in bench_localization().items():
        print(f"  {backend:<8} {ms:8.2f} ms/target over {n} candidates")


if __name__ == "__main__":
    main()
