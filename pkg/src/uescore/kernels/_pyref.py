"""Pure-Python reference kernels.

Every function here has a compiled twin in ``_native``. The two backends must
stay bit-identical, so arithmetic is written as plain sequential loops over
IEEE doubles — no pairwise summation, no fsum — in exactly the order the
compiled code uses.
"""

from __future__ import annotations

import math
from typing import Sequence


def sum_values(values: Sequence[float]) -> float:
    if not values:
        raise ValueError("sum of an empty sequence")
    total = 0.0
    for v in values:
        total += v
    return total


def mean_value(values: Sequence[float]) -> float:
    if not values:
        raise ValueError("mean of an empty sequence")
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def weighted_sum(values: Sequence[float], weights: Sequence[float]) -> float:
    if len(values) != len(weights):
        raise ValueError(
            f"length mismatch: {len(values)} values vs {len(weights)} weights"
        )
    if not values:
        raise ValueError("weighted sum of an empty sequence")
    total = 0.0
    for v, w in zip(values, weights):
        total += w * v
    return total


def softmax(values: Sequence[float], tau: float) -> list[float]:
    """Temperature softmax with max-subtraction.

    With small temperatures the raw exponents overflow ``exp``; subtracting
    the max keeps every exponent <= 0.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if not values:
        raise ValueError("softmax of an empty sequence")
    m = values[0]
    for v in values:
        if v > m:
            m = v
    exps = []
    total = 0.0
    for v in values:
        e = math.exp((v - m) / tau)
        exps.append(e)
        total += e
    return [e / total for e in exps]


def logsumexp(values: Sequence[float]) -> float:
    if not values:
        raise ValueError("logsumexp of an empty sequence")
    m = values[0]
    for v in values:
        if v > m:
            m = v
    total = 0.0
    for v in values:
        total += math.exp(v - m)
    return m + math.log(total)


def _auroc_over_order(
    values: Sequence[float], positives: Sequence[int], order: Sequence[int]
) -> float:
    """Rank-sum AUROC given a stable ascending sort order of ``values``.

    Ties get midranks, which is what makes equal-score cross-class pairs
    count for one half.
    """
    n = len(values)
    n_pos = 0
    for flag in positives:
        if flag:
            n_pos += 1
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present")
    rank_sum_pos = 0.0
    i = 0
    while i < n:
        j = i
        group_pos = 0
        while j < n and values[order[j]] == values[order[i]]:
            if positives[order[j]]:
                group_pos += 1
            j += 1
        midrank = (i + 1 + j) / 2.0
        rank_sum_pos += midrank * group_pos
        i = j
    u_pos = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return u_pos / (n_pos * n_neg)


def auroc_midrank(values: Sequence[float], positives: Sequence[int]) -> float:
    if len(values) != len(positives):
        raise ValueError(
            f"length mismatch: {len(values)} values vs {len(positives)} labels"
        )
    order = sorted(range(len(values)), key=values.__getitem__)
    return _auroc_over_order(values, positives, order)
