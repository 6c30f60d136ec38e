"""Decision tree: top-down induction with binary numeric splits chosen by
information gain ratio.

An impure node splits whenever any valid split exists, even at zero gain;
on consistent data this drives training accuracy to 1.0 with min_leaf 1.
Tie order for splits: highest gain ratio, then lowest feature index, then
lowest threshold. Thresholds are midpoints of adjacent distinct values and
rows go left when value <= threshold; if rounding collapses a midpoint onto
the right value it falls back to the left value, keeping partitions
float-exact.
"""

from __future__ import annotations

import numpy as np

_FEATURE_CHUNK = 512  # bound the (rows x features x classes) scratch tensor


def _xlog2x(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a, dtype=float)
    np.log2(a, out=out, where=a > 0)
    return a * out


def best_split(
    X: np.ndarray,
    onehot: np.ndarray,
    rows: np.ndarray,
    min_leaf: int,
    columns: np.ndarray,
) -> tuple[int, float] | None:
    """Best (feature, threshold) over `columns` for the node's `rows`, or
    None when no split leaves min_leaf rows on both sides."""
    n = rows.size
    if n < 2 * min_leaf:
        return None
    hot = onehot[rows]
    sizes = np.arange(1, n, dtype=float)
    parent_counts = hot.sum(axis=0)
    parent_entropy = np.log2(float(n)) - _xlog2x(parent_counts).sum() / n

    best: tuple[float, int, float] | None = None  # (ratio, feature, threshold)
    for start in range(0, columns.size, _FEATURE_CHUNK):
        cols = columns[start : start + _FEATURE_CHUNK]
        values = X[np.ix_(rows, cols)]
        order = np.argsort(values, axis=0, kind="stable")
        sorted_values = np.take_along_axis(values, order, axis=0)
        # cumulative class counts along each feature's sort order
        cum = np.cumsum(hot[order], axis=0)  # (n, m, k)

        left_counts = cum[:-1]  # cut p: left = first p+1... use sizes below
        right_counts = parent_counts[None, None, :] - left_counts
        left_sizes = sizes[:, None]
        right_sizes = n - left_sizes
        h_left = np.log2(left_sizes) - _xlog2x(left_counts).sum(axis=2) / left_sizes
        h_right = np.log2(right_sizes) - _xlog2x(right_counts).sum(axis=2) / right_sizes
        gain = parent_entropy - (left_sizes * h_left + right_sizes * h_right) / n
        np.maximum(gain, 0.0, out=gain)
        q = left_sizes / n
        split_info = -(_xlog2x(q) + _xlog2x(1.0 - q))
        ratio = gain / split_info

        valid = (sorted_values[1:] > sorted_values[:-1]) & (
            (left_sizes >= min_leaf) & (right_sizes >= min_leaf)
        )
        ratio[~valid] = -np.inf
        if not np.any(valid):
            continue
        # transpose so the flat argmax breaks ties by feature then threshold
        flat = np.argmax(ratio.T)
        ci, pi = divmod(flat, n - 1)
        left_value = float(sorted_values[pi, ci])
        right_value = float(sorted_values[pi + 1, ci])
        midpoint = (left_value + right_value) / 2.0
        if not left_value <= midpoint < right_value:
            midpoint = left_value
        cand = (float(ratio[pi, ci]), int(cols[ci]), midpoint)
        if best is None or (cand[0], -cand[1], -cand[2]) > (best[0], -best[1], -best[2]):
            best = cand
    if best is None:
        return None
    return best[1], best[2]


class _Builder:
    def __init__(self, X, y_idx, n_classes, min_leaf, column_picker=None):
        self.X = X
        self.onehot = np.zeros((X.shape[0], n_classes))
        self.onehot[np.arange(X.shape[0]), y_idx] = 1.0
        self.min_leaf = min_leaf
        self.column_picker = column_picker
        self.all_columns = np.arange(X.shape[1])
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.dist: list[np.ndarray] = []

    def build(self, rows: np.ndarray) -> int:
        counts = self.onehot[rows].sum(axis=0)
        node = len(self.feature)
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.dist.append(counts / rows.size)
        if counts.max() == rows.size:  # pure
            return node
        columns = self.all_columns if self.column_picker is None else self.column_picker()
        found = best_split(self.X, self.onehot, rows, self.min_leaf, columns)
        if found is None:
            return node
        j, thr = found
        mask = self.X[rows, j] <= thr
        self.feature[node] = j
        self.threshold[node] = thr
        self.left[node] = self.build(rows[mask])
        self.right[node] = self.build(rows[~mask])
        return node

    def params(self) -> dict:
        return {
            "feature": np.array(self.feature, dtype=np.intp),
            "threshold": np.array(self.threshold),
            "left": np.array(self.left, dtype=np.intp),
            "right": np.array(self.right, dtype=np.intp),
            "dist": np.vstack(self.dist),
        }


def build_tree(X, y_idx, n_classes, min_leaf, column_picker=None) -> dict:
    builder = _Builder(X, y_idx, n_classes, min_leaf, column_picker)
    builder.build(np.arange(X.shape[0]))
    params = builder.params()
    params["n_features"] = X.shape[1]
    return params


def fit(rows: np.ndarray, y_idx: np.ndarray, n_classes: int, config) -> dict:
    return build_tree(rows, y_idx, n_classes, config.tree_min_leaf)


def leaf_distributions(params: dict, rows: np.ndarray) -> np.ndarray:
    """Route rows to leaves iteratively; returns each row's leaf class
    distribution."""
    if rows.shape[1] != params["n_features"]:
        raise ValueError(f"expected {params['n_features']} features, got {rows.shape[1]}")
    feature, threshold = params["feature"], params["threshold"]
    left, right = params["left"], params["right"]
    node = np.zeros(rows.shape[0], dtype=np.intp)
    while True:
        feat = feature[node]
        active = feat >= 0
        if not np.any(active):
            break
        value = rows[np.arange(rows.shape[0]), np.maximum(feat, 0)]
        go_left = value <= threshold[node]
        node = np.where(active, np.where(go_left, left[node], right[node]), node)
    return params["dist"][node]


def scores(params: dict, rows: np.ndarray) -> np.ndarray:
    return leaf_distributions(params, rows)
