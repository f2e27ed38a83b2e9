"""Projections from a real n x n score matrix onto permutations.

Two routes: exact maximum-weight bipartite assignment (the LP relaxation is
totally unimodular, so an exact assignment solver attains the LP optimum),
and the greedy projection that repeatedly locks in the globally largest
remaining entry and eliminates its row and column.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .graphs import Permutation

__all__ = ["max_weight_matching", "greedy_round"]


def _check_scores(scores: np.ndarray) -> np.ndarray:
    s = np.asarray(scores, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] == 0:
        raise ValueError(f"scores must be a non-empty square matrix, got shape {s.shape}")
    if not np.isfinite(s).all():
        raise ValueError("scores must be finite (no NaN or infinity)")
    return s


def max_weight_matching(scores: np.ndarray) -> Permutation:
    """Permutation maximizing sum_i scores[i, sigma(i)], by exact assignment."""
    s = _check_scores(scores)
    rows, cols = linear_sum_assignment(s, maximize=True)
    mapping = np.empty(s.shape[0], dtype=np.int64)
    mapping[rows] = cols
    return Permutation(mapping)


def greedy_round(scores: np.ndarray) -> Permutation:
    """Greedy projection: take the globally largest entry among unused rows and
    columns, assign that pair, strike its row and column, repeat n times.

    Ties break toward the smallest linear index i*n + j, so the projection is
    deterministic.
    """
    s = _check_scores(scores)
    n = s.shape[0]
    flat = s.reshape(-1)
    # Stable sort on the negated values keeps equal entries in increasing
    # linear-index order, which implements the tie-break.
    order = np.argsort(-flat, kind="stable")
    row_used = np.zeros(n, dtype=bool)
    col_used = np.zeros(n, dtype=bool)
    mapping = np.full(n, -1, dtype=np.int64)
    assigned = 0
    for idx in order:
        i, j = divmod(int(idx), n)
        if row_used[i] or col_used[j]:
            continue
        mapping[i] = j
        row_used[i] = True
        col_used[j] = True
        assigned += 1
        if assigned == n:
            break
    return Permutation(mapping)
