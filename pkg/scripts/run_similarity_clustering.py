#!/usr/bin/env python3
"""Cluster a synthetic corpus under both task-similarity measures.

Builds the pairwise similarity matrix for each measure (required_action
needs a WordNet database; the bundled miniature one is the default), runs
k-medoids, and prints purity against the generator's categories plus the
per-cluster category distribution table.
"""

from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path

from tasksim.cli import generate_synthetic_corpus
from tasksim.cluster import k_medoids, purity
from tasksim.corpus import load_corpus
from tasksim.reports import render_distribution_text
from tasksim.semsim import SIMILARITY_MEASURES, default_wordlist, similarity_matrix
from tasksim.wordnet import bundled_mini_wordnet_dir, load_wordnet


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--categories", type=int, default=5)
    parser.add_argument("--per-category", type=int, default=60)
    parser.add_argument("--k", type=int, default=15)
    parser.add_argument("--wordnet", default=None,
                        help="WordNet database directory (default: bundled)")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    wn = load_wordnet(args.wordnet or bundled_mini_wordnet_dir())
    wordlist = default_wordlist()
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "corpus.jsonl"
        n = generate_synthetic_corpus(
            path, args.seed,
            categories=args.categories, per_category=args.per_category,
        )
        corpus = load_corpus(path)
    print(f"corpus: {n} tasks, {args.categories} categories, seed {args.seed}")
    labels = {task.id: task.category for task in corpus}

    for measure in SIMILARITY_MEASURES:
        matrix = similarity_matrix(corpus, measure, wn=wn, wordlist=wordlist)
        clustering = k_medoids(matrix, args.k, seed=args.seed)
        print(f"\n== {measure}, k={args.k} ==")
        print(f"total_dissimilarity: {clustering.total_dissimilarity:.6f}")
        print(f"purity: {purity(clustering, labels):.6f}")
        print(render_distribution_text(clustering, corpus), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
