"""Tree ensembles: random forest (bootstrap, best Gini split among
sqrt-many candidate features) and extra trees (random thresholds, no
bootstrap). Trees grow to purity; prediction is majority vote over
trees, ties resolved toward the lower class index.

Binary classes only (0/1). Dense float input; sparse matrices are
densified by the caller.
"""

from __future__ import annotations

import numpy as np

N_TREES = 100


def _gini_split_cost(nl, l1, nr, r1):
    """n_L*gini_L + n_R*gini_R up to constants; lower is better."""
    l0 = nl - l1
    r0 = nr - r1
    return (nl - (l1 * l1 + l0 * l0) / nl) + (nr - (r1 * r1 + r0 * r0) / nr)


def _best_threshold_sorted(xs: np.ndarray, ys: np.ndarray):
    """Best Gini split over all midpoints of a sorted feature column.

    Returns (cost, threshold) or None when the column is constant.
    """
    n = xs.shape[0]
    if xs[0] == xs[-1]:
        return None
    c1 = np.cumsum(ys)
    total1 = c1[-1]
    pos = np.nonzero(xs[1:] > xs[:-1])[0] + 1  # valid split points
    nl = pos.astype(np.float64)
    nr = n - nl
    l1 = c1[pos - 1].astype(np.float64)
    r1 = total1 - l1
    cost = _gini_split_cost(nl, l1, nr, r1)
    k = int(np.argmin(cost))
    thr = (xs[pos[k] - 1] + xs[pos[k]]) / 2.0
    return float(cost[k]), thr


class _Tree:
    """Flat-array binary tree: feature < 0 marks a leaf storing the class."""

    def __init__(self):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.leaf_class: list[int] = []

    def _new_node(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.leaf_class.append(-1)
        return len(self.feature) - 1

    def fit(self, x: np.ndarray, y: np.ndarray,
            rng: np.random.Generator, max_features: int,
            random_threshold: bool) -> "_Tree":
        n_features = x.shape[1]
        root = self._new_node()
        stack = [(root, np.arange(x.shape[0]))]
        while stack:
            node, idx = stack.pop()
            ys = y[idx]
            if ys.min() == ys.max():
                self.leaf_class[node] = int(ys[0])
                continue
            split = self._find_split(x, idx, ys, rng, max_features,
                                     random_threshold)
            if split is None:
                # identical rows with mixed labels: majority, low index on tie
                self.leaf_class[node] = int(np.argmax(np.bincount(ys, minlength=2)))
                continue
            f, thr = split
            mask = x[idx, f] <= thr
            left = self._new_node()
            right = self._new_node()
            self.feature[node] = f
            self.threshold[node] = thr
            self.left[node] = left
            self.right[node] = right
            stack.append((right, idx[~mask]))
            stack.append((left, idx[mask]))
        return self

    def _find_split(self, x, idx, ys, rng, max_features, random_threshold):
        n_features = x.shape[1]
        candidates = rng.permutation(n_features)
        best = None  # (cost, feature, threshold)
        tried = 0
        for f in candidates:
            if tried >= max_features and best is not None:
                break
            col = x[idx, f]
            lo, hi = col.min(), col.max()
            if lo == hi:
                continue  # constant column never counts against the budget
            tried += 1
            if random_threshold:
                thr = float(rng.uniform(lo, hi))
                mask = col <= thr
                nl = int(mask.sum())
                if nl == 0 or nl == len(col):
                    continue
                l1 = int(ys[mask].sum())
                cost = _gini_split_cost(float(nl), float(l1),
                                        float(len(col) - nl),
                                        float(int(ys.sum()) - l1))
                cand = (cost, int(f), thr)
            else:
                order = np.argsort(col, kind="stable")
                found = _best_threshold_sorted(col[order], ys[order])
                if found is None:
                    continue
                cost, thr = found
                cand = (cost, int(f), thr)
            if best is None or cand[0] < best[0]:
                best = cand
        if best is None:
            return None
        return best[1], best[2]

    def predict(self, x: np.ndarray) -> np.ndarray:
        out = np.empty(x.shape[0], dtype=int)
        for i in range(x.shape[0]):
            node = 0
            while self.feature[node] >= 0:
                if x[i, self.feature[node]] <= self.threshold[node]:
                    node = self.left[node]
                else:
                    node = self.right[node]
            out[i] = self.leaf_class[node]
        return out

    def as_dict(self) -> dict:
        return {"feature": self.feature, "threshold": self.threshold,
                "left": self.left, "right": self.right,
                "leaf_class": self.leaf_class}

    @classmethod
    def from_dict(cls, d: dict) -> "_Tree":
        t = cls()
        t.feature = list(d["feature"])
        t.threshold = [float(v) for v in d["threshold"]]
        t.left = list(d["left"])
        t.right = list(d["right"])
        t.leaf_class = list(d["leaf_class"])
        return t


class Forest:
    """Ensemble of N_TREES trees; variant 'random_forest' or 'extra_trees'."""

    def __init__(self, variant: str, n_trees: int = N_TREES):
        if variant not in ("random_forest", "extra_trees"):
            raise ValueError(f"unknown forest variant {variant!r}")
        self.variant = variant
        self.n_trees = n_trees
        self.trees: list[_Tree] = []

    def fit(self, x, y: np.ndarray, seed: int) -> "Forest":
        x = self._densify(x)
        y = np.asarray(y, dtype=int)
        max_features = max(1, int(np.sqrt(x.shape[1])))
        bootstrap = self.variant == "random_forest"
        random_threshold = self.variant == "extra_trees"
        streams = np.random.SeedSequence(seed).spawn(self.n_trees)
        self.trees = []
        for ss in streams:
            rng = np.random.default_rng(ss)
            if bootstrap:
                sample = rng.integers(0, x.shape[0], x.shape[0])
                xt, yt = x[sample], y[sample]
            else:
                xt, yt = x, y
            self.trees.append(
                _Tree().fit(xt, yt, rng, max_features, random_threshold))
        return self

    def predict(self, x) -> np.ndarray:
        x = self._densify(x)
        votes = np.zeros(x.shape[0], dtype=int)
        for t in self.trees:
            votes += t.predict(x)
        # majority; exact tie goes to class 0
        return (votes * 2 > len(self.trees)).astype(int)

    @staticmethod
    def _densify(x) -> np.ndarray:
        if hasattr(x, "toarray"):
            x = x.toarray()
        return np.asarray(x, dtype=np.float64)

    def as_dict(self) -> dict:
        return {"variant": self.variant, "n_trees": self.n_trees,
                "trees": [t.as_dict() for t in self.trees]}

    @classmethod
    def from_dict(cls, d: dict) -> "Forest":
        f = cls(variant=d["variant"], n_trees=d["n_trees"])
        f.trees = [_Tree.from_dict(td) for td in d["trees"]]
        return f
