"""Binary classification metrics over 2x2 confusion matrices.

Convention: rows are true classes, columns are predicted classes, class
order fixed by the sorted group labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


def metrics(confusion: np.ndarray) -> tuple[float, float, float, float]:
    """(macro precision, macro recall, macro F1, accuracy).

    Per-class precision/recall/F1 are defined as 0 when their
    denominator is 0.
    """
    c = np.asarray(confusion, dtype=np.float64)
    if c.shape != (2, 2) or (c < 0).any() or c.sum() == 0:
        raise ValueError("confusion must be a nonnegative 2x2 matrix with sum > 0")
    precisions, recalls, f1s = [], [], []
    for k in (0, 1):
        col = c[:, k].sum()
        row = c[k, :].sum()
        p = c[k, k] / col if col > 0 else 0.0
        r = c[k, k] / row if row > 0 else 0.0
        f1 = 2 * p * r / (p + r) if (p + r) > 0 else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(f1)
    accuracy = np.trace(c) / c.sum()
    return (sum(precisions) / 2, sum(recalls) / 2, sum(f1s) / 2, float(accuracy))


@dataclass
class EvalReport:
    """Per-fold and aggregate cross-validation metrics."""

    classifier_kind: str
    feature_kind: str
    labels: tuple[str, str]
    fold_confusions: list[list[list[int]]] = field(default_factory=list)
    fold_metrics: list[dict[str, float]] = field(default_factory=list)

    def add_fold(self, confusion: np.ndarray) -> None:
        p, r, f1, acc = metrics(confusion)
        self.fold_confusions.append(np.asarray(confusion, dtype=int).tolist())
        self.fold_metrics.append(
            {"precision": p, "recall": r, "macro_f1": f1, "accuracy": acc})

    @property
    def aggregate(self) -> dict[str, float]:
        keys = ("precision", "recall", "macro_f1", "accuracy")
        n = len(self.fold_metrics)
        return {k: sum(m[k] for m in self.fold_metrics) / n for k in keys}

    def as_dict(self) -> dict:
        return {
            "classifier_kind": self.classifier_kind,
            "feature_kind": self.feature_kind,
            "labels": list(self.labels),
            "fold_confusions": self.fold_confusions,
            "fold_metrics": self.fold_metrics,
            "aggregate": self.aggregate,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def reports_to_tsv(reports: list[EvalReport]) -> str:
    """One row per (classifier, feature kind): plot-ready panel data."""
    lines = ["classifier\tfeatures\tprecision\trecall\tmacro_f1\taccuracy"]
    for rep in reports:
        a = rep.aggregate
        lines.append(
            f"{rep.classifier_kind}\t{rep.feature_kind}\t"
            f"{a['precision']:.6f}\t{a['recall']:.6f}\t"
            f"{a['macro_f1']:.6f}\t{a['accuracy']:.6f}")
    return "\n".join(lines) + "\n"
