#!/usr/bin/env python3
"""Run the feature-set x classifier grid on a synthetic corpus.

Generates a corpus with the built-in generator, cross-validates every
requested (feature sets, algorithm) cell, and prints the weighted-F1 grid.
The default is the four single feature sets against all five classifiers;
pass --sets all-combos for the full 15-combination sweep (slow).
"""

from __future__ import annotations

import argparse
import sys
import tempfile
import time
from pathlib import Path

from tasksim.cli import generate_synthetic_corpus
from tasksim.corpus import load_corpus
from tasksim.evaluation import ALGORITHMS, grid_run
from tasksim.features import FEATURE_SET_NAMES
from tasksim.reports import render_grid_text


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--categories", type=int, default=5)
    parser.add_argument("--per-category", type=int, default=60)
    parser.add_argument("--folds", type=int, default=10)
    parser.add_argument(
        "--sets",
        default="singles",
        help="'singles', 'all-combos', or comma-separated sets "
        "joined by '+' (e.g. 'content,factual+structural')",
    )
    parser.add_argument("--algo", default="all",
                        help="'all' or comma-separated classifier names")
    return parser.parse_args(argv)


def combos_for(spec: str):
    if spec == "all-combos":
        return None
    if spec == "singles":
        return tuple((name,) for name in FEATURE_SET_NAMES)
    return tuple(
        tuple(s.strip() for s in part.split("+")) for part in spec.split(",")
    )


def main(argv=None) -> int:
    args = parse_args(argv)
    algos = ALGORITHMS if args.algo == "all" else tuple(args.algo.split(","))
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.jsonl"
        n = generate_synthetic_corpus(
            path, args.seed,
            categories=args.categories, per_category=args.per_category,
        )
        corpus = load_corpus(path)
    print(f"corpus: {n} tasks, {args.categories} categories, seed {args.seed}")
    started = time.perf_counter()
    grid = grid_run(
        corpus, combos_for(args.sets), algos,
        k=args.folds, seed=args.seed,
    )
    elapsed = time.perf_counter() - started
    print(render_grid_text(grid), end="")
    print(f"({len(grid.reports)} cells in {elapsed:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
