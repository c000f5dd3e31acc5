"""Two-sample distributional testing and descriptive statistics.

The Mann-Whitney U test is rank-based: midranks for ties, exact
enumeration for small tie-free samples, normal approximation with tie
and continuity corrections otherwise. Two-sided only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

EXACT_LIMIT = 12  # exact enumeration when n1 + n2 <= this and no ties


class AnalysisError(Exception):
    pass


@dataclass(frozen=True)
class UTestResult:
    feature_name: str
    u_statistic: float
    p_value: float
    method: str  # "exact" | "normal_approx"
    n1: int
    n2: int
    alpha: float

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha


def _midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1  # average of positions i..j, 1-based
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _exact_two_sided_p(u_min: float, n1: int, n2: int) -> float:
    """P over all C(n1+n2, n1) equally likely rank assignments (no ties)."""
    total = 0
    hits = 0
    base = n1 * (n1 + 1) / 2
    for combo in combinations(range(1, n1 + n2 + 1), n1):
        u1 = sum(combo) - base
        u2 = n1 * n2 - u1
        total += 1
        if min(u1, u2) <= u_min + 1e-12:
            hits += 1
    # symmetric distribution: counting min(U1,U2) <= u_min covers both tails
    return min(1.0, hits / total)


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def mann_whitney_u(
    x: Sequence[float],
    y: Sequence[float],
    alpha: float = 0.05,
    feature_name: str = "",
    alternative: str = "two_sided",
    method: str = "auto",
) -> UTestResult:
    """Two-sided Mann-Whitney U test; U = min(U1, U2).

    method: 'auto' picks exact enumeration for small tie-free samples
    and the normal approximation otherwise; 'exact' / 'normal_approx'
    force one path (exact rejects ties).
    """
    if alternative != "two_sided":
        raise AnalysisError("only the two-sided alternative is supported")
    if method not in ("auto", "exact", "normal_approx"):
        raise AnalysisError(f"unknown method {method!r}")
    n1, n2 = len(x), len(y)
    if n1 == 0 or n2 == 0:
        raise AnalysisError("samples must be non-empty")
    pooled = list(x) + list(y)
    if any(not math.isfinite(v) for v in pooled):
        raise AnalysisError("samples must be finite")

    ranks = _midranks(pooled)
    r1 = sum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2
    u2 = n1 * n2 - u1
    u = min(u1, u2)

    has_ties = len(set(pooled)) < len(pooled)
    if method == "exact" and has_ties:
        raise AnalysisError("exact method requires tie-free samples")
    if len(set(pooled)) == 1:
        return UTestResult(feature_name, u, 1.0, "normal_approx", n1, n2, alpha)

    if method == "exact" or (method == "auto" and not has_ties
                             and n1 + n2 <= EXACT_LIMIT):
        p = _exact_two_sided_p(u, n1, n2)
        return UTestResult(feature_name, u, p, "exact", n1, n2, alpha)

    n = n1 + n2
    # tie correction to the rank variance
    tie_sum = 0
    counts: dict[float, int] = {}
    for v in pooled:
        counts[v] = counts.get(v, 0) + 1
    for c in counts.values():
        tie_sum += c ** 3 - c
    sigma_sq = n1 * n2 / 12.0 * ((n + 1) - tie_sum / (n * (n - 1)))
    if sigma_sq <= 0:
        return UTestResult(feature_name, u, 1.0, "normal_approx", n1, n2, alpha)
    mu = n1 * n2 / 2.0
    # Continuity correction, clamped so U at the null mean gives p = 1
    # instead of overshooting past it.
    z = max(0.0, mu - u - 0.5) / math.sqrt(sigma_sq)
    p = min(1.0, 2.0 * _normal_sf(z))
    return UTestResult(feature_name, u, p, "normal_approx", n1, n2, alpha)


def describe(samples: Sequence[float]) -> tuple[float, float, float, float, float]:
    """(mean, sample std, median, min, max); std is 0 for n = 1."""
    n = len(samples)
    if n == 0:
        raise AnalysisError("empty sample")
    vals = sorted(samples)
    mean = sum(vals) / n
    std = 0.0
    if n > 1:
        std = math.sqrt(sum((v - mean) ** 2 for v in vals) / (n - 1))
    mid = n // 2
    median = vals[mid] if n % 2 else (vals[mid - 1] + vals[mid]) / 2
    return mean, std, median, vals[0], vals[-1]


def utest_report_tsv(results: list[UTestResult]) -> str:
    """TSV: feature, U, p, method, n1, n2, significant, plus a Bonferroni
    column (alpha / number of features) for transparency."""
    m = max(1, len(results))
    lines = ["feature\tU\tp\tmethod\tn1\tn2\tsignificant\tsignificant_bonferroni"]
    for r in results:
        bonf = r.p_value < r.alpha / m
        lines.append(
            f"{r.feature_name}\t{r.u_statistic:.6g}\t{r.p_value:.6g}\t"
            f"{r.method}\t{r.n1}\t{r.n2}\t{str(r.significant).lower()}\t"
            f"{str(bonf).lower()}")
    return "\n".join(lines) + "\n"
