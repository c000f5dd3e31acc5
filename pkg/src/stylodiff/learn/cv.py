"""Training dispatch, stratified cross-validation, model serialization.

All randomness flows through explicit seeds; a fixed (kind, dataset,
seed) triple reproduces folds, models, and reports exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..features import TfidfVectorizer, feature_matrix
from ..textproc import TokenizedReview
from .forest import Forest
from .linear import LinearModel, Scaler
from .metrics import EvalReport

CLASSIFIER_KINDS = ("logreg", "linear_svm", "random_forest", "extra_trees")
FEATURE_KINDS = ("linguistic", "ngram", "combined")


class LearnError(Exception):
    pass


@dataclass
class Dataset:
    """Labeled feature source for training and cross-validation.

    `dense` holds the linguistic feature matrix; `docs` holds tokenized
    reviews so tf-idf can be refit on train folds only. feature_kind
    decides which of the two (or both, for 'combined') are used.
    """

    labels: list[str]
    feature_kind: str
    dense: np.ndarray | None = None
    docs: list[TokenizedReview] | None = None
    tfidf_ngram_range: tuple[int, int] = (1, 2)
    tfidf_min_df: int = 2

    def __post_init__(self):
        if self.feature_kind not in FEATURE_KINDS:
            raise LearnError(f"unknown feature_kind {self.feature_kind!r}")
        if self.feature_kind in ("linguistic", "combined") and self.dense is None:
            raise LearnError(f"{self.feature_kind} dataset needs a dense matrix")
        if self.feature_kind in ("ngram", "combined") and self.docs is None:
            raise LearnError(f"{self.feature_kind} dataset needs tokenized docs")
        n = len(self.labels)
        if self.dense is not None and self.dense.shape[0] != n:
            raise LearnError("dense matrix row count != label count")
        if self.docs is not None and len(self.docs) != n:
            raise LearnError("document count != label count")

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    def y(self) -> np.ndarray:
        classes = self.classes
        index = {c: i for i, c in enumerate(classes)}
        return np.array([index[l] for l in self.labels], dtype=int)


def _training_checksum(x, y: np.ndarray) -> str:
    h = hashlib.sha256()
    if sp.issparse(x):
        x = x.tocsr()
        for part in (x.data, x.indices, x.indptr):
            h.update(np.ascontiguousarray(part).tobytes())
    else:
        h.update(np.ascontiguousarray(np.asarray(x, dtype=np.float64)).tobytes())
    h.update(np.ascontiguousarray(y).tobytes())
    return h.hexdigest()


@dataclass
class TrainedModel:
    kind: str
    classes: tuple[str, ...]
    model: LinearModel | Forest
    scaler: Scaler | None
    metadata: dict = field(default_factory=dict)

    def predict(self, x) -> np.ndarray:
        if self.scaler is not None:
            x = self.scaler.transform(x)
        return self.model.predict(x)

    def predict_labels(self, x) -> list[str]:
        return [self.classes[i] for i in self.predict(x)]

    def to_json(self) -> str:
        payload = {
            "format_version": 1,
            "kind": self.kind,
            "classes": list(self.classes),
            "scaler": self.scaler.as_dict() if self.scaler else None,
            "model": self.model.as_dict(),
            "metadata": self.metadata,
        }
        return json.dumps(payload, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TrainedModel":
        d = json.loads(text)
        if d.get("format_version") != 1:
            raise LearnError(f"unsupported model format {d.get('format_version')!r}")
        model: LinearModel | Forest
        if d["kind"] in ("logreg", "linear_svm"):
            model = LinearModel.from_dict(d["model"])
        else:
            model = Forest.from_dict(d["model"])
        scaler = Scaler.from_dict(d["scaler"]) if d["scaler"] else None
        return cls(kind=d["kind"], classes=tuple(d["classes"]),
                   model=model, scaler=scaler, metadata=d["metadata"])


def train(kind: str, x, y: np.ndarray, classes: tuple[str, ...],
          seed: int = 0, feature_kind: str = "linguistic",
          n_trees: int = 100) -> TrainedModel:
    """Fit one classifier on a prepared feature matrix.

    Linguistic features are z-standardized (statistics from this
    training set) for the linear kinds; trees consume raw features.
    """
    if kind not in CLASSIFIER_KINDS:
        raise LearnError(f"unknown classifier kind {kind!r}")
    y = np.asarray(y, dtype=int)
    if len(np.unique(y)) < 2:
        raise LearnError("training data contains a single class")
    scaler = None
    if kind in ("logreg", "linear_svm"):
        if feature_kind == "linguistic":
            scaler = Scaler.fit(np.asarray(x, dtype=np.float64))
            x = scaler.transform(x)
        model: LinearModel | Forest = LinearModel(
            loss="logistic" if kind == "logreg" else "squared_hinge")
        model.fit(x, y)
    else:
        model = Forest(variant=kind, n_trees=n_trees)
        model.fit(x, y, seed=seed)
    metadata = {
        "kind": kind,
        "feature_kind": feature_kind,
        "seed": seed,
        "n_samples": int(y.shape[0]),
        "n_features": int(x.shape[1]),
        "hyperparameters": ({"c": 1.0} if kind in ("logreg", "linear_svm")
                            else {"n_trees": n_trees, "max_features": "sqrt",
                                  "bootstrap": kind == "random_forest"}),
        "training_checksum": _training_checksum(x, y),
    }
    return TrainedModel(kind=kind, classes=classes, model=model,
                        scaler=scaler, metadata=metadata)


def stratified_folds(y: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    """Seeded shuffle per class, then round-robin assignment to k folds.

    Class proportions are preserved within one example per fold.
    """
    y = np.asarray(y)
    folds: list[list[int]] = [[] for _ in range(k)]
    rng = np.random.default_rng(seed)
    for cls in np.unique(y):
        idx = np.nonzero(y == cls)[0]
        if len(idx) < k:
            raise LearnError(
                f"class {cls} has {len(idx)} examples, fewer than k={k}")
        idx = idx[rng.permutation(len(idx))]
        for pos, i in enumerate(idx):
            folds[pos % k].append(int(i))
    return [np.array(sorted(f), dtype=int) for f in folds]


def _fold_features(dataset: Dataset, train_idx: np.ndarray,
                   test_idx: np.ndarray):
    """Build (x_train, x_test) with all fitting done on the train fold."""
    kind = dataset.feature_kind
    parts_train, parts_test = [], []
    if kind in ("linguistic", "combined"):
        parts_train.append(np.asarray(dataset.dense[train_idx], dtype=np.float64))
        parts_test.append(np.asarray(dataset.dense[test_idx], dtype=np.float64))
    if kind in ("ngram", "combined"):
        vec = TfidfVectorizer(ngram_range=dataset.tfidf_ngram_range,
                              min_df=dataset.tfidf_min_df)
        docs = dataset.docs
        vec.fit([docs[i] for i in train_idx])
        parts_train.append(vec.transform([docs[i] for i in train_idx]).csr)
        parts_test.append(vec.transform([docs[i] for i in test_idx]).csr)
    if len(parts_train) == 1:
        return parts_train[0], parts_test[0]
    return (sp.hstack([sp.csr_matrix(parts_train[0]), parts_train[1]], format="csr"),
            sp.hstack([sp.csr_matrix(parts_test[0]), parts_test[1]], format="csr"))


def cross_validate(kind: str, dataset: Dataset, k: int = 5,
                   seed: int = 0, n_trees: int = 100) -> EvalReport:
    """Stratified k-fold evaluation; scaler and vectorizer are fitted on
    train folds only. Aggregate metrics are means over folds."""
    classes = dataset.classes
    if len(classes) != 2:
        raise LearnError(f"need exactly 2 classes, got {len(classes)}")
    y = dataset.y()
    folds = stratified_folds(y, k, seed)
    report = EvalReport(classifier_kind=kind, feature_kind=dataset.feature_kind,
                        labels=(classes[0], classes[1]))
    all_idx = np.arange(len(y))
    for fold in folds:
        test_mask = np.zeros(len(y), dtype=bool)
        test_mask[fold] = True
        train_idx = all_idx[~test_mask]
        x_train, x_test = _fold_features(dataset, train_idx, fold)
        model = train(kind, x_train, y[train_idx], classes, seed=seed,
                      feature_kind=dataset.feature_kind, n_trees=n_trees)
        pred = model.predict(x_test)
        confusion = np.zeros((2, 2), dtype=int)
        for truth, p in zip(y[fold], pred):
            confusion[truth, p] += 1
        report.add_fold(confusion)
    return report
