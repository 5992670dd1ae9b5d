"""Triangles, K4s, and vertex-disjoint packings of them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from diskoct import _kernels
from diskoct.graph import Graph

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class TrianglePacking:
    """Pairwise vertex-disjoint cliques (triangles, or 4-cliques for the K4 packing)."""

    members: tuple[tuple[int, ...], ...] = ()
    covered: frozenset[int] = field(init=False)

    def __post_init__(self):
        members = tuple(tuple(sorted(m)) for m in self.members)
        covered = frozenset(v for m in members for v in m)
        if len(covered) != sum(len(m) for m in members):
            raise ValueError("packing members are not vertex-disjoint")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "covered", covered)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def enumerate_triangles(g: Graph) -> list[Triangle]:
    """Every triangle once, as a sorted triple, in lexicographic order."""
    tri = _kernels.triangles(g.indptr, g.indices)
    return [tuple(t) for t in tri.tolist()]


def greedy_packing(family: Iterable[Sequence[int]]) -> TrianglePacking:
    """Take each member in the given order iff it misses everything taken so far."""
    used: set[int] = set()
    taken = []
    for s in family:
        if used.isdisjoint(s):
            taken.append(tuple(s))
            used.update(s)
    return TrianglePacking(tuple(taken))


def maximal_triangle_packing(
    g: Graph, order_seed: int | None = None, triangles: list[Triangle] | None = None
) -> TrianglePacking:
    """Greedy maximal packing over the lexicographic triangle order.

    ``order_seed`` shuffles the order first (for experiments with packing order).
    """
    tris = enumerate_triangles(g) if triangles is None else triangles
    if order_seed is not None:
        perm = np.random.default_rng(order_seed).permutation(len(tris))
        tris = [tris[i] for i in perm]
    return greedy_packing(tris)


def enumerate_k4s(g: Graph, triangles: list[Triangle] | None = None) -> list[tuple[int, int, int, int]]:
    if triangles is None:
        triangles = enumerate_triangles(g)
    nb = g.nbrs
    out = []
    for u, v, w in triangles:
        common = nb[u] & nb[v] & nb[w]
        out.extend((u, v, w, x) for x in sorted(common) if x > w)
    return out


def maximal_k4_packing(g: Graph) -> TrianglePacking:
    return greedy_packing(enumerate_k4s(g))


def find_k4(g: Graph) -> tuple[int, int, int, int] | None:
    nb = g.nbrs
    for u, v, w in enumerate_triangles(g):
        common = nb[u] & nb[v] & nb[w]
        if common:
            return tuple(sorted((u, v, w, min(common))))
    return None


def outside_triangles(g: Graph, t: TrianglePacking, triangles: list[Triangle] | None = None) -> list[Triangle]:
    """Triangles of ``g`` with at least one vertex outside the packing's cover."""
    if triangles is None:
        triangles = enumerate_triangles(g)
    cov = t.covered
    return [tri for tri in triangles if not cov.issuperset(tri)]


def maximal_packing_of(family: Iterable[Triangle]) -> TrianglePacking:
    return greedy_packing(sorted(tuple(sorted(t)) for t in family))


def maximum_packing_size(family: Iterable[Triangle], budget: int = 1_000_000) -> int | None:
    """Exact size of a largest disjoint sub-family, or None if the node budget runs out.

    Branch on the first remaining triangle (take it / drop it); prune when
    neither the remaining triangles nor their vertices can beat the incumbent.
    """
    fam = sorted(set(tuple(sorted(t)) for t in family))
    best = len(greedy_packing(fam))
    nodes = 0

    # the "drop" branch is unrolled into the loop so recursion depth is the packing size
    def search(remaining: list[Triangle], count: int) -> bool:
        nonlocal best, nodes
        if count > best:
            best = count
        for i, first in enumerate(remaining):
            nodes += 1
            if nodes > budget:
                return False
            tail = remaining[i:]
            verts = set().union(*tail)
            if count + min(len(tail), len(verts) // 3) <= best:
                return True
            rest = [t for t in remaining[i + 1:] if first[0] not in t and first[1] not in t and first[2] not in t]
            if not search(rest, count + 1):
                return False
        return True

    return best if search(fam, 0) else None
