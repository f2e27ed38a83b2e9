"""Input validation helpers for the estimator API.

Accept graphs in ecosystem-friendly forms (adjacency array-likes) and
normalize them to :class:`~netalign.graphs.Graph`.
"""

from __future__ import annotations

import numpy as np

from .graphs import Graph

__all__ = ["as_graph", "check_equal_sizes"]


def as_graph(obj) -> Graph:
    """Coerce a Graph, boolean/0-1 adjacency matrix, or nested sequence to Graph.

    The adjacency must be square, symmetric, hollow (zero diagonal) and
    contain only 0/1 (or boolean) entries.
    """
    if isinstance(obj, Graph):
        return obj
    arr = np.asarray(obj)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"adjacency must be a square matrix, got shape {arr.shape}")
    if arr.dtype != bool:
        values = np.unique(arr)
        if not np.isin(values, (0, 1)).all():
            raise ValueError("adjacency entries must be boolean or 0/1")
        arr = arr.astype(bool)
    return Graph(arr)


def check_equal_sizes(g1: Graph, g2: Graph) -> int:
    if g1.n != g2.n:
        raise ValueError(f"graphs must have the same vertex count, got {g1.n} and {g2.n}")
    return g1.n
