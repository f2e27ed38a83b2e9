"""Pairwise-correspondence scoring operator and its dense oracle.

The operator scores every pair of candidate vertex correspondences
((i, j'), (r, s')) with s1 when (i, r) and (j', s') are both edges, s2 when
neither is, and s3 otherwise. It acts on length-n² vectors indexed by
i*n + j' (row: first-graph vertex, column: second-graph vertex) and is never
materialized: the product reduces to sparse congruence and rank-one terms,

    U = (s1 + s2 - 2 s3) * G1 V G2 + (s3 - s2) * (G1 V J + J V G2) + s2 * J V J,

costing O(n * (e1 + e2) + n^2) per apply. `dense_matrix` builds the full
n² x n² matrix entry by entry from the scoring rule alone and exists purely
as a verification oracle for small n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, Permutation

__all__ = [
    "ScoringParams",
    "AlignmentOperator",
    "DegenerateBalanceError",
    "compute_alpha",
    "make_params",
    "dense_alignment_matrix",
    "quadratic_form",
]

DEFAULT_EPSILON = 0.001
DENSE_ORACLE_CAP = 12


class DegenerateBalanceError(ValueError):
    """Raised when the match/mismatch balance ratio is 0/0 (both graphs empty)."""


@dataclass(frozen=True)
class ScoringParams:
    """Scores (s1, s2, s3) = (alpha + eps, 1 + eps, eps) for edge match /
    non-edge match / mismatch, all positive so the operator is entrywise
    positive and plain power iteration finds its dominant eigenvector."""

    s1: float
    s2: float
    s3: float
    epsilon: float
    alpha: float

    def __post_init__(self) -> None:
        if not (self.s1 > 0 and self.s2 > 0 and self.s3 > 0):
            raise ValueError("all scores must be positive")
        if not (self.s1 > self.s3 and self.s2 > self.s3):
            raise ValueError("match scores must exceed the mismatch score")


def make_params(alpha: float, epsilon: float = DEFAULT_EPSILON) -> ScoringParams:
    """Build scoring parameters from the balance ratio alpha and regularizer epsilon."""
    alpha = float(alpha)
    epsilon = float(epsilon)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    return ScoringParams(s1=alpha + epsilon, s2=1.0 + epsilon, s3=epsilon,
                         epsilon=epsilon, alpha=alpha)


def compute_alpha(g1: Graph, g2: Graph) -> float:
    """Balance ratio 1 + #matches/#mismatches over all n² x n² ordered pair-pairs.

    The counting universe is every ordered vertex pair of each graph,
    diagonal included (classified as non-edges), so the counts are literally
    the numbers of s1- and s3-entries of the operator.
    """
    if g1.n != g2.n:
        raise ValueError(f"graphs differ in size: {g1.n} vs {g2.n}")
    n2 = g1.n * g1.n
    e1 = 2 * g1.edge_count  # ordered pairs
    e2 = 2 * g2.edge_count
    matches = e1 * e2
    mismatches = e1 * (n2 - e2) + (n2 - e1) * e2
    if mismatches == 0:
        raise DegenerateBalanceError(
            "match/mismatch balance is degenerate (both graphs are empty)")
    return 1.0 + matches / mismatches


class AlignmentOperator:
    """Matrix-free symmetric positive operator on length-n² vectors.

    Immutable after construction; `apply` is a pure function and safe to call
    concurrently.
    """

    def __init__(self, g1: Graph, g2: Graph, params: ScoringParams):
        if g1.n != g2.n:
            raise ValueError(f"graphs differ in size: {g1.n} vs {g2.n}")
        self.g1 = g1
        self.g2 = g2
        self.params = params
        self.n = g1.n
        self.dim = g1.n * g1.n
        self._a1 = g1.csr()
        self._a2 = g2.csr()
        p = params
        self._k_quad = p.s1 + p.s2 - 2.0 * p.s3
        self._k_lin = p.s3 - p.s2

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Operator-vector product without materializing the matrix."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dim,):
            raise ValueError(f"vector must have length {self.dim}, got shape {v.shape}")
        n = self.n
        V = v.reshape(n, n)
        # Quadratic term: G1 V G2 via two sparse-dense products.
        U = self._k_quad * ((self._a1 @ V) @ self._a2)
        # Rank-one corrections: G1 V J has constant rows G1 @ rowsums(V),
        # J V G2 constant columns G2 @ colsums(V) (G2 symmetric).
        row = self._a1 @ V.sum(axis=1)
        col = self._a2 @ V.sum(axis=0)
        U += self._k_lin * (row[:, None] + col[None, :])
        U += self.params.s2 * V.sum()
        return U.reshape(self.dim)


def quadratic_form(op: AlignmentOperator, perm: Permutation) -> float:
    """y^T A y for the 0/1 vectorization y of the permutation matrix.

    Computed with a single operator apply and a dot product.
    """
    if len(perm) != op.n:
        raise ValueError(f"permutation length {len(perm)} != operator size {op.n}")
    y = permutation_vector(op.n, perm)
    return float(y @ op.apply(y))


def permutation_vector(n: int, perm: Permutation) -> np.ndarray:
    """0/1 vectorization of the permutation matrix: y[i*n + perm(i)] = 1."""
    y = np.zeros(n * n, dtype=np.float64)
    y[np.arange(n) * n + perm.map] = 1.0
    return y


def dense_alignment_matrix(g1: Graph, g2: Graph, params: ScoringParams,
                           max_n: int = DENSE_ORACLE_CAP) -> np.ndarray:
    """Explicit n² x n² scoring matrix, built entry by entry from the rule.

    Verification oracle only: O(n^4) memory. Kept independent of the
    operator's decomposition on purpose.
    """
    if g1.n != g2.n:
        raise ValueError(f"graphs differ in size: {g1.n} vs {g2.n}")
    n = g1.n
    if n > max_n:
        raise ValueError(f"dense oracle capped at n={max_n}, got n={n}")
    s1, s2, s3 = params.s1, params.s2, params.s3
    out = np.empty((n * n, n * n), dtype=np.float64)
    for i in range(n):
        for jp in range(n):
            a = i * n + jp
            for r in range(n):
                for sq in range(n):
                    edge1 = g1.has_edge(i, r)
                    edge2 = g2.has_edge(jp, sq)
                    if edge1 and edge2:
                        score = s1
                    elif not edge1 and not edge2:
                        score = s2
                    else:
                        score = s3
                    out[a, r * n + sq] = score
    return out
