"""Simple undirected graphs on dense integer ids, stored as CSR arrays."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from diskoct import _kernels


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Adjacency is CSR: the neighbours of ``v`` are
    ``indices[indptr[v]:indptr[v + 1]]``, sorted ascending. Build instances
    with :meth:`from_edges`; the raw constructor trusts its arrays.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
                raise ValueError(f"edge {tuple(bad.tolist())} has an endpoint outside 0..{n - 1}")
            loops = arr[:, 0] == arr[:, 1]
            if loops.any():
                raise ValueError(f"self-loop at vertex {int(arr[loops][0, 0])}")
        return cls._from_pairs(n, arr[:, 0], arr[:, 1])

    @classmethod
    def _from_pairs(cls, n: int, us: np.ndarray, vs: np.ndarray) -> Graph:
        rows = np.concatenate([us, vs]).astype(np.int64)
        cols = np.concatenate([vs, us]).astype(np.int64)
        # dedupe parallel edges, then order by (row, col)
        keys = np.unique(rows * max(n, 1) + cols)
        rows, cols = np.divmod(keys, max(n, 1))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        indptr.flags.writeable = False
        cols.flags.writeable = False
        return cls(n, indptr, cols)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls.from_edges(n, [])

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        ptr = self.indptr.tolist()
        nbr = self.indices.tolist()
        return tuple(tuple(nbr[ptr[v]:ptr[v + 1]]) for v in range(self.n))

    @cached_property
    def nbrs(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, a in enumerate(self.adj) for v in a if u < v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Subgraph(NamedTuple):
    """An induced subgraph together with the ids its vertices had in the parent."""

    graph: Graph
    labels: np.ndarray

    def lift(self, vertices: Iterable[int]) -> set[int]:
        lab = self.labels
        return {int(lab[v]) for v in vertices}


@dataclass(frozen=True)
class BipartitenessCertificate:
    """Either a proper two-colouring or an odd cycle, never both."""

    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None

    @property
    def bipartite(self) -> bool:
        return self.odd_cycle is None

    def __bool__(self) -> bool:
        return self.bipartite


def full_mask(g: Graph) -> np.ndarray:
    return np.ones(g.n, dtype=np.bool_)


def is_bipartite(g: Graph) -> BipartitenessCertificate:
    color, cycle = _kernels.two_color(g.indptr, g.indices, full_mask(g))
    if len(cycle):
        return BipartitenessCertificate(odd_cycle=tuple(int(x) for x in cycle))
    return BipartitenessCertificate(coloring=tuple(int(c) for c in color))


def find_odd_cycle(g: Graph, alive: np.ndarray | None = None, shortest: bool = False) -> tuple[int, ...] | None:
    """Odd cycle in ``g`` restricted to ``alive`` vertices, or None if bipartite.

    With ``shortest=True`` a BFS is run from every vertex and a minimum-length
    odd cycle is returned (ties go to the lowest BFS root).
    """
    if alive is None:
        alive = full_mask(g)
    if shortest:
        cycle = _kernels.shortest_odd_cycle(g.indptr, g.indices, alive)
    else:
        cycle = _kernels.two_color(g.indptr, g.indices, alive)[1]
    return tuple(int(x) for x in cycle) if len(cycle) else None


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Subgraph:
    """Subgraph induced by ``keep``; surviving vertices are renumbered in id order."""
    mask = np.zeros(g.n, dtype=np.bool_)
    keep = np.fromiter(keep, dtype=np.int64)
    if keep.size and (keep.min() < 0 or keep.max() >= g.n):
        raise ValueError(f"vertex id out of range 0..{g.n - 1}")
    mask[keep] = True
    return _induced_by_mask(g, mask)


def _induced_by_mask(g: Graph, mask: np.ndarray) -> Subgraph:
    labels = np.flatnonzero(mask)
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[labels] = np.arange(len(labels))
    rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
    cols = g.indices
    sel = mask[rows] & mask[cols]
    rows, cols = new_id[rows[sel]], new_id[cols[sel]]
    k = len(labels)
    indptr = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=k), out=indptr[1:])
    cols = np.ascontiguousarray(cols)
    indptr.flags.writeable = False
    cols.flags.writeable = False
    labels.flags.writeable = False
    return Subgraph(Graph(k, indptr, cols), labels)


def delete_vertices(g: Graph, s: Iterable[int]) -> Subgraph:
    """``g - s``: the subgraph induced by the vertices not in ``s``."""
    mask = np.ones(g.n, dtype=np.bool_)
    s = np.fromiter(s, dtype=np.int64)
    if s.size and (s.min() < 0 or s.max() >= g.n):
        raise ValueError(f"vertex id out of range 0..{g.n - 1}")
    mask[s] = False
    return _induced_by_mask(g, mask)


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy and a min-degree peeling order witnessing it.

    Ties between vertices of equal current degree go to the lowest id.
    """
    c, order = _kernels.degeneracy(g.indptr, g.indices)
    return int(c), [int(v) for v in order]


def bfs_ball(g: Graph, v: int, radius: int, allowed: set[int] | frozenset[int] | None = None) -> set[int]:
    """Vertices within ``radius`` hops of ``v`` in ``g[allowed]``."""
    seen = {v}
    frontier = [v]
    adj = g.adj
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def greedy_distance3_mis(g: Graph, domain: Iterable[int]) -> list[int]:
    """Maximal distance-3 independent set of ``g[domain]``, lowest id first.

    Repeatedly take the smallest remaining candidate and discard its closed
    3-neighbourhood (measured inside ``g[domain]``).
    """
    dom = frozenset(domain)
    candidates = set(dom)
    picked = []
    for v in sorted(dom):
        if v not in candidates:
            continue
        picked.append(v)
        candidates -= bfs_ball(g, v, 3, dom)
    return picked


# ---------------------------------------------------------------------------
# edge-list text format


def parse_edge_list(text: str) -> Graph:
    """Parse ``p <n> <m>`` header (optional) plus one ``u v`` pair per line.

    Without a header, n is one more than the largest id seen.
    """
    n = None
    declared_m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None or edges:
                raise ValueError(f"line {lineno}: header must come first")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'p <n> <m>'")
            n, declared_m = int(parts[1]), int(parts[2])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    g = Graph.from_edges(n, edges)
    if declared_m is not None and declared_m != g.m:
        raise ValueError(f"header declares {declared_m} edges but {g.m} distinct edges were read")
    return g


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g))
