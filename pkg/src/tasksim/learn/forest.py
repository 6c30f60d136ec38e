"""Random forest: bootstrapped gain-ratio trees with per-split feature
subsets. Tree t draws from default_rng(seed + t), so any evaluation order
reproduces the same forest."""

from __future__ import annotations

import math

import numpy as np

from . import tree


def _subset_size(n_features: int, fraction: float | None) -> int:
    if fraction is None:
        return max(1, round(math.sqrt(n_features)))
    return max(1, round(n_features * fraction))


def fit(rows: np.ndarray, y_idx: np.ndarray, n_classes: int, config, seed: int) -> dict:
    n, n_features = rows.shape
    m = min(_subset_size(n_features, config.forest_feature_fraction), n_features)
    trees = []
    for t in range(config.forest_trees):
        rng = np.random.default_rng(seed + t)
        sample = rng.integers(0, n, size=n)

        def pick_columns(rng=rng):
            # sorted so split ties still resolve by global feature index
            return np.sort(rng.choice(n_features, size=m, replace=False))

        trees.append(
            tree.build_tree(rows[sample], y_idx[sample], n_classes, config.tree_min_leaf, pick_columns)
        )
    return {"trees": trees, "n_features": n_features, "n_classes": n_classes}


def scores(params: dict, rows: np.ndarray) -> np.ndarray:
    """Fraction of trees voting for each class."""
    votes = np.zeros((rows.shape[0], params["n_classes"]))
    for tree_params in params["trees"]:
        dist = tree.leaf_distributions(tree_params, rows)
        picks = np.argmax(dist, axis=1)
        votes[np.arange(rows.shape[0]), picks] += 1.0
    return votes / len(params["trees"])
