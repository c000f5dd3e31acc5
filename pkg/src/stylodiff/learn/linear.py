"""L2-regularized linear classifiers trained with L-BFGS.

Objectives follow the common toolkit convention
    0.5 * w.w + C * sum_i loss(y_i * (x_i.w + b)),    C = 1.0
with binary labels mapped to y in {-1, +1}. The SVM uses the squared
hinge (smooth, so the quasi-Newton solver applies); logistic regression
uses the log loss. Optimization is deterministic: fixed zero start,
gradient tolerance 1e-6, at most 1000 iterations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize

GRAD_TOL = 1e-6
MAX_ITER = 1000


@dataclass
class Scaler:
    """Per-feature standardization; zero-variance columns pass through."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, x: np.ndarray) -> "Scaler":
        mean = x.mean(axis=0)
        std = x.std(axis=0)
        std = np.where(std == 0, 1.0, std)
        return cls(mean=mean, std=std)

    def transform(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=np.float64) - self.mean) / self.std

    def as_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Scaler":
        return cls(mean=np.array(d["mean"]), std=np.array(d["std"]))


def _margins(x, w: np.ndarray, b: float) -> np.ndarray:
    if sp.issparse(x):
        return np.asarray(x @ w).ravel() + b
    return x @ w + b


def _grad_contrib(x, coef: np.ndarray) -> np.ndarray:
    if sp.issparse(x):
        return np.asarray(x.T @ coef).ravel()
    return x.T @ coef


class LinearModel:
    """Weight vector + bias; loss is 'logistic' or 'squared_hinge'."""

    def __init__(self, loss: str, c: float = 1.0):
        if loss not in ("logistic", "squared_hinge"):
            raise ValueError(f"unknown loss {loss!r}")
        self.loss = loss
        self.c = c
        self.w: np.ndarray | None = None
        self.b: float = 0.0

    def fit(self, x, y: np.ndarray) -> "LinearModel":
        y_pm = np.where(np.asarray(y) == 1, 1.0, -1.0)
        d = x.shape[1]

        def objective(theta):
            w, b = theta[:d], theta[d]
            m = y_pm * _margins(x, w, b)
            if self.loss == "logistic":
                # log(1+exp(-m)) computed stably
                loss = np.logaddexp(0.0, -m)
                dloss = -1.0 / (1.0 + np.exp(m))  # d/dm
            else:
                gap = np.maximum(0.0, 1.0 - m)
                loss = gap ** 2
                dloss = -2.0 * gap
            f = 0.5 * w @ w + self.c * loss.sum()
            coef = self.c * dloss * y_pm
            gw = w + _grad_contrib(x, coef)
            gb = coef.sum()
            return f, np.concatenate([gw, [gb]])

        res = minimize(objective, np.zeros(d + 1), jac=True, method="L-BFGS-B",
                       options={"maxiter": MAX_ITER, "gtol": GRAD_TOL,
                                "ftol": 1e-12})
        self.w = res.x[:d]
        self.b = float(res.x[d])
        return self

    def decision(self, x) -> np.ndarray:
        assert self.w is not None, "model is not fitted"
        return _margins(x, self.w, self.b)

    def predict(self, x) -> np.ndarray:
        return (self.decision(x) > 0).astype(int)

    def as_dict(self) -> dict:
        assert self.w is not None
        return {"loss": self.loss, "c": self.c,
                "w": self.w.tolist(), "b": self.b}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearModel":
        m = cls(loss=d["loss"], c=d["c"])
        m.w = np.array(d["w"], dtype=np.float64)
        m.b = float(d["b"])
        return m
