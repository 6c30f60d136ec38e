"""Linear SVM trained with sequential minimal optimization, one-vs-rest.

The optimizer follows the classic SMO structure: alternate full sweeps with
sweeps over non-bound multipliers, pick the second multiplier by maximum
error difference with randomized fallbacks, and keep a full error cache that
is recomputed after every successful step. Convergence is declared only
after svm_max_passes consecutive full sweeps make no change, which retries
stalled violators with fresh partner orderings. Features are standardized
internally on training statistics.
"""

from __future__ import annotations

import numpy as np

_STEP_EPS = 1e-7
_MAX_SWEEPS = 10000


class _BinarySMO:
    def __init__(self, K: np.ndarray, y: np.ndarray, C: float, tol: float, rng):
        self.K = K
        self.y = y
        self.C = C
        self.tol = tol
        self.rng = rng
        self.n = len(y)
        self.alpha = np.zeros(self.n)
        self.b = 0.0
        self.E = -y.astype(float)  # f(x) - y with all multipliers zero

    def _recompute_errors(self) -> None:
        self.E = (self.alpha * self.y) @ self.K + self.b - self.y

    def _take_step(self, i1: int, i2: int) -> bool:
        if i1 == i2:
            return False
        a1, a2 = self.alpha[i1], self.alpha[i2]
        y1, y2 = self.y[i1], self.y[i2]
        e1, e2 = self.E[i1], self.E[i2]
        s = y1 * y2
        if s > 0:
            low, high = max(0.0, a1 + a2 - self.C), min(self.C, a1 + a2)
        else:
            low, high = max(0.0, a2 - a1), min(self.C, self.C + a2 - a1)
        if low >= high:
            return False
        k11, k12, k22 = self.K[i1, i1], self.K[i1, i2], self.K[i2, i2]
        eta = k11 + k22 - 2.0 * k12
        if eta > 0:
            a2_new = a2 + y2 * (e1 - e2) / eta
            a2_new = min(max(a2_new, low), high)
        else:
            # flat direction: evaluate the objective at both clip ends
            f1 = y1 * (e1 - self.b) - a1 * k11 - s * a2 * k12
            f2 = y2 * (e2 - self.b) - s * a1 * k12 - a2 * k22
            l1 = a1 + s * (a2 - low)
            h1 = a1 + s * (a2 - high)
            obj_low = (
                l1 * f1 + low * f2 + 0.5 * l1 * l1 * k11 + 0.5 * low * low * k22 + s * low * l1 * k12
            )
            obj_high = (
                h1 * f1 + high * f2 + 0.5 * h1 * h1 * k11 + 0.5 * high * high * k22 + s * high * h1 * k12
            )
            if obj_low < obj_high - 1e-12:
                a2_new = low
            elif obj_low > obj_high + 1e-12:
                a2_new = high
            else:
                a2_new = a2
        if abs(a2_new - a2) < _STEP_EPS * (a2_new + a2 + _STEP_EPS):
            return False
        a1_new = a1 + s * (a2 - a2_new)
        b1 = self.b - e1 - y1 * (a1_new - a1) * k11 - y2 * (a2_new - a2) * k12
        b2 = self.b - e2 - y1 * (a1_new - a1) * k12 - y2 * (a2_new - a2) * k22
        if 0.0 < a1_new < self.C:
            self.b = b1
        elif 0.0 < a2_new < self.C:
            self.b = b2
        else:
            self.b = (b1 + b2) / 2.0
        self.alpha[i1] = a1_new
        self.alpha[i2] = a2_new
        self._recompute_errors()
        return True

    def _examine(self, i2: int) -> bool:
        y2, a2, e2 = self.y[i2], self.alpha[i2], self.E[i2]
        r2 = e2 * y2
        if not ((r2 < -self.tol and a2 < self.C) or (r2 > self.tol and a2 > 0.0)):
            return False
        non_bound = np.where((self.alpha > 0.0) & (self.alpha < self.C))[0]
        if non_bound.size > 1:
            i1 = int(non_bound[np.argmax(np.abs(self.E[non_bound] - e2))])
            if self._take_step(i1, i2):
                return True
        if non_bound.size:
            start = int(self.rng.integers(non_bound.size))
            for off in range(non_bound.size):
                if self._take_step(int(non_bound[(start + off) % non_bound.size]), i2):
                    return True
        start = int(self.rng.integers(self.n))
        for off in range(self.n):
            if self._take_step((start + off) % self.n, i2):
                return True
        return False

    def solve(self, max_passes: int) -> None:
        examine_all = True
        quiet_full_sweeps = 0
        for _ in range(_MAX_SWEEPS):
            if quiet_full_sweeps >= max_passes:
                break
            changed = 0
            if examine_all:
                for i in range(self.n):
                    changed += self._examine(i)
                quiet_full_sweeps = quiet_full_sweeps + 1 if changed == 0 else 0
                if changed:
                    examine_all = False
            else:
                for i in np.where((self.alpha > 0.0) & (self.alpha < self.C))[0]:
                    changed += self._examine(int(i))
                if changed == 0:
                    examine_all = True


def fit(rows: np.ndarray, y_idx: np.ndarray, n_classes: int, config, seed: int) -> dict:
    mean = rows.mean(axis=0)
    std = rows.std(axis=0)
    std = np.where(std > 0.0, std, 1.0)
    standardized = (rows - mean) / std
    gram = standardized @ standardized.T
    machines = []
    for c in range(n_classes):
        y = np.where(y_idx == c, 1.0, -1.0)
        rng = np.random.default_rng([seed % (2**63), c])
        solver = _BinarySMO(gram, y, config.svm_C, config.svm_tol, rng)
        solver.solve(config.svm_max_passes)
        w = (solver.alpha * y) @ standardized
        machines.append(
            {"w": w, "b": float(solver.b), "alpha": solver.alpha.copy(), "y": y}
        )
    return {
        "mean": mean,
        "std": std,
        "machines": machines,
        "n_features": rows.shape[1],
    }


def scores(params: dict, rows: np.ndarray) -> np.ndarray:
    """Per-class decision values of the one-vs-rest machines."""
    if rows.shape[1] != params["n_features"]:
        raise ValueError(f"expected {params['n_features']} features, got {rows.shape[1]}")
    standardized = (rows - params["mean"]) / params["std"]
    out = np.empty((rows.shape[0], len(params["machines"])))
    for c, machine in enumerate(params["machines"]):
        out[:, c] = standardized @ machine["w"] + machine["b"]
    return out
