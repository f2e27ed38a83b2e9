"""Estimator-style wrappers around the matching pipelines.

The classes follow the scikit-learn parameter protocol (`get_params` /
`set_params`, all hyperparameters in ``__init__``, fitted attributes with a
trailing underscore) so they compose with ecosystem tooling such as
``sklearn.base.clone`` and grid-search style sweeps, without requiring
scikit-learn itself.
"""

from __future__ import annotations

import numpy as np

from .align import (DEFAULT_PPA_MAX_ITERS, AlignConfig, AlignmentResult,
                    eigen_align, projected_power_align)
from .operator import DEFAULT_EPSILON
from .spectral import DEFAULT_MAX_ITERS, DEFAULT_TOL
from .validation import as_graph, check_equal_sizes

__all__ = ["EigenAlign", "ProjectedPowerAlignment"]


class _BaseAligner:
    """Shared fit plumbing; subclasses define `_config` and `_run`."""

    _param_names: tuple[str, ...] = ()

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names}

    def set_params(self, **params) -> "_BaseAligner":
        for name, value in params.items():
            if name not in self._param_names:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(self._param_names)}")
            setattr(self, name, value)
        return self

    def _config(self) -> AlignConfig:
        raise NotImplementedError

    def _run(self, g1, g2, cfg: AlignConfig) -> AlignmentResult:
        raise NotImplementedError

    def fit(self, g1, g2) -> "_BaseAligner":
        """Align two graphs given as Graph objects or 0/1 adjacency matrices."""
        graph1 = as_graph(g1)
        graph2 = as_graph(g2)
        check_equal_sizes(graph1, graph2)
        result = self._run(graph1, graph2, self._config())
        self.result_ = result
        self.permutation_ = np.array(result.permutation.map)
        self.objective_ = result.objective
        self.matched_edges_ = result.matched_edges
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self

    def fit_predict(self, g1, g2) -> np.ndarray:
        """Fit and return the vertex correspondence as an integer array."""
        return self.fit(g1, g2).permutation_

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


class EigenAlign(_BaseAligner):
    """Spectral matcher: dominant-eigenvector scores rounded by exact assignment.

    Attributes after fit: ``permutation_`` (int array, vertex i of the first
    graph maps to ``permutation_[i]`` of the second), ``objective_``,
    ``matched_edges_``, ``n_iter_``, ``converged_``, ``result_``.
    """

    _param_names = ("epsilon", "eigen_tol", "eigen_max_iters")

    def __init__(self, epsilon: float = DEFAULT_EPSILON,
                 eigen_tol: float = DEFAULT_TOL,
                 eigen_max_iters: int = DEFAULT_MAX_ITERS):
        self.epsilon = epsilon
        self.eigen_tol = eigen_tol
        self.eigen_max_iters = eigen_max_iters

    def _config(self) -> AlignConfig:
        return AlignConfig(epsilon=self.epsilon, eigen_tol=self.eigen_tol,
                           eigen_max_iters=self.eigen_max_iters)

    def _run(self, g1, g2, cfg: AlignConfig) -> AlignmentResult:
        return eigen_align(g1, g2, cfg)


class ProjectedPowerAlignment(_BaseAligner):
    """Projected power matcher: operator multiplies alternated with greedy
    projection onto permutations, seeded by the dominant eigenvector."""

    _param_names = ("epsilon", "eigen_tol", "eigen_max_iters", "max_iters", "return_best")

    def __init__(self, epsilon: float = DEFAULT_EPSILON,
                 eigen_tol: float = DEFAULT_TOL,
                 eigen_max_iters: int = DEFAULT_MAX_ITERS,
                 max_iters: int = DEFAULT_PPA_MAX_ITERS,
                 return_best: bool = True):
        self.epsilon = epsilon
        self.eigen_tol = eigen_tol
        self.eigen_max_iters = eigen_max_iters
        self.max_iters = max_iters
        self.return_best = return_best

    def _config(self) -> AlignConfig:
        return AlignConfig(epsilon=self.epsilon, eigen_tol=self.eigen_tol,
                           eigen_max_iters=self.eigen_max_iters,
                           ppa_max_iters=self.max_iters,
                           return_best=self.return_best)

    def _run(self, g1, g2, cfg: AlignConfig) -> AlignmentResult:
        return projected_power_align(g1, g2, cfg)
