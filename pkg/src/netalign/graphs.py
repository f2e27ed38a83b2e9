"""Simple undirected graphs, permutations, and seeded random generators.

Graphs are stored as a read-only boolean adjacency matrix (O(1) membership)
together with a lazily built CSR view (per-vertex sorted neighbor lists) used
by the alignment operator. All randomness flows through :class:`RngSeed`,
which keys a counter-based Philox generator, so every generator here is
bit-reproducible across runs and platforms for equal seeds.

Edge-list text format::

    n <vertex_count>
    i j          # one 0-indexed edge per line, either orientation
    # comment lines and blank lines are ignored

Duplicate lines and both orientations of an edge collapse to a single edge;
self-loops are rejected.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np
import scipy.sparse as sp
from numpy.random import Generator, Philox

__all__ = [
    "Graph",
    "Permutation",
    "RngSeed",
    "generate_er",
    "apply_noise",
    "permute",
    "random_permutation",
    "parse_edge_list",
    "format_edge_list",
    "matched_edges",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngSeed:
    """Key of a counter-based random stream: (base_seed, stream_id).

    Equal keys yield equal streams everywhere; distinct stream_ids give
    statistically independent streams under the same base_seed.
    """

    base_seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("base_seed", "stream_id"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not (0 <= int(value) <= _MASK64):
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")

    def generator(self) -> Generator:
        key = np.array([self.base_seed, self.stream_id], dtype=np.uint64)
        return Generator(Philox(key=key))


def as_seed(seed: "RngSeed | int") -> RngSeed:
    """Accept a bare int as shorthand for RngSeed(int, 0)."""
    if isinstance(seed, RngSeed):
        return seed
    return RngSeed(int(seed))


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    The adjacency matrix is validated symmetric with a zero diagonal and
    frozen (writeable=False). Treat instances as value objects; they are safe
    to share across threads.
    """

    __slots__ = ("_adj", "_edge_count", "_csr")

    def __init__(self, adjacency: np.ndarray):
        adj = np.asarray(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] == 0:
            raise ValueError("graph needs at least one vertex")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj = adj.copy()
        adj.flags.writeable = False
        self._adj = adj
        self._edge_count = int(np.count_nonzero(adj)) // 2
        self._csr = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        adj = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"vertex id out of range: ({i}, {j}) with n={n}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            adj[i, j] = adj[j, i] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adj

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self._adj[i, j])

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self._adj[i])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (i, j) with i < j, lexicographically sorted."""
        rows, cols = np.nonzero(np.triu(self._adj))
        return list(zip(rows.tolist(), cols.tolist()))

    def csr(self) -> sp.csr_array:
        """Float64 CSR view (sorted neighbor lists) for sparse products."""
        if self._csr is None:
            self._csr = sp.csr_array(self._adj.astype(np.float64))
        return self._csr

    def degree_sequence(self) -> np.ndarray:
        return self._adj.sum(axis=1).astype(np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


class Permutation:
    """Bijection on {0..n-1}, stored as the image array `map`."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Iterable[int]):
        arr = np.asarray(list(mapping) if not isinstance(mapping, np.ndarray) else mapping,
                         dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("permutation must be a non-empty 1-D sequence")
        n = arr.size
        if not np.array_equal(np.sort(arr), np.arange(n)):
            raise ValueError("not a bijection on 0..n-1")
        arr = arr.copy()
        arr.flags.writeable = False
        self._map = arr

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    @property
    def map(self) -> np.ndarray:
        return self._map

    def __len__(self) -> int:
        return self._map.size

    def __call__(self, i: int) -> int:
        return int(self._map[i])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._map)
        inv[self._map] = np.arange(self._map.size)
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if len(self) != len(other):
            raise ValueError("size mismatch")
        return Permutation(self._map[other._map])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._map, other._map)

    def __hash__(self) -> int:
        return hash(self._map.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self._map.tolist()})"


def _check_probability(value: float, name: str) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0) or np.isnan(value):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def generate_er(n: int, p: float, seed: RngSeed | int) -> Graph:
    """Erdős–Rényi G(n, p): each unordered pair is an edge with probability p."""
    if n < 1:
        raise ValueError("n must be at least 1")
    p = _check_probability(p, "p")
    rng = as_seed(seed).generator()
    iu, ju = np.triu_indices(n, k=1)
    draws = rng.random(iu.size) < p
    adj = np.zeros((n, n), dtype=bool)
    adj[iu, ju] = draws
    adj |= adj.T
    return Graph(adj)


def apply_noise(g: Graph, lam: float, seed: RngSeed | int) -> Graph:
    """Flip each unordered pair's edge indicator independently with probability lam.

    The flip mask is sampled on i<j and mirrored, with a zero diagonal, so the
    result is again a simple graph.
    """
    lam = _check_probability(lam, "lambda")
    rng = as_seed(seed).generator()
    n = g.n
    iu, ju = np.triu_indices(n, k=1)
    flips = rng.random(iu.size) < lam
    adj = np.array(g.adjacency)
    adj[iu, ju] ^= flips
    adj[ju, iu] = adj[iu, ju]
    return Graph(adj)


def permute(g: Graph, perm: Permutation) -> Graph:
    """Relabel vertices: result.adjacency[perm(i), perm(j)] = g.adjacency[i, j]."""
    if len(perm) != g.n:
        raise ValueError(f"permutation length {len(perm)} != vertex count {g.n}")
    adj = np.zeros_like(g.adjacency)
    idx = perm.map
    adj[np.ix_(idx, idx)] = g.adjacency
    return Graph(adj)


def random_permutation(n: int, seed: RngSeed | int) -> Permutation:
    """Uniform random permutation (Fisher–Yates), deterministic given seed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = as_seed(seed).generator()
    return Permutation(rng.permutation(n))


def matched_edges(g1: Graph, g2: Graph, perm: Permutation) -> int:
    """Number of unordered pairs {i,j} that are edges in g1 and map to edges in g2."""
    if g1.n != g2.n or len(perm) != g1.n:
        raise ValueError("graphs and permutation must share one vertex count")
    idx = perm.map
    relabeled = g2.adjacency[np.ix_(idx, idx)]  # [i,j] = g2[perm(i), perm(j)]
    return int(np.count_nonzero(g1.adjacency & relabeled)) // 2


def parse_edge_list(text: str | IO[str]) -> Graph:
    """Parse the edge-list text format documented in the module docstring."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <count>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 1:
                raise ValueError(f"line {lineno}: vertex count must be positive")
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        if i == j:
            raise ValueError(f"line {lineno}: self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        edges.append((min(i, j), max(i, j)))
    if n is None:
        raise ValueError("missing 'n <count>' header line")
    return Graph.from_edges(n, set(edges))


def format_edge_list(g: Graph) -> str:
    """Emit the edge-list format; edges sorted lexicographically."""
    lines = [f"n {g.n}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"
