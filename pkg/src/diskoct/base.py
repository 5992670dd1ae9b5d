"""Base OCT subroutines: an exact branch-and-bound and a greedy fallback.

The approximation algorithm calls a base subroutine on triangle-free
remainders; the exact solver also serves as the optimum oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from diskoct import _kernels
from diskoct.graph import Graph

EXACT = "exact"
GREEDY = "greedy"

DEFAULT_ORACLE_BUDGET = 10_000_000


@dataclass(frozen=True)
class ExactSolution:
    vertices: frozenset[int]
    optimal: bool
    nodes_explored: int = 0

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class BaseSubroutine:
    """Which OCT routine to run on the triangle-free remainders, and its budget."""

    kind: str = EXACT
    budget: int = 1_000_000

    def __post_init__(self):
        if self.kind not in (EXACT, GREEDY):
            raise ValueError(f"unknown base subroutine kind {self.kind!r}")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def declared_ratio(self) -> float:
        # the greedy fallback carries no approximation guarantee
        return 1.0 if self.kind == EXACT else math.inf

    def run(self, g: Graph) -> ExactSolution:
        if self.kind == EXACT:
            return exact_oct(g, self.budget)
        return ExactSolution(frozenset(greedy_oct(g)), optimal=False)


def base_solve(sub: BaseSubroutine, g: Graph) -> frozenset[int]:
    return sub.run(g).vertices


def greedy_oct(g: Graph, alive: np.ndarray | None = None) -> list[int]:
    """Delete the highest-degree vertex of some odd cycle until none is left.

    Degrees are taken in the current (shrinking) graph; ties go to the lowest id.
    """
    alive = np.ones(g.n, dtype=np.bool_) if alive is None else alive.copy()
    deg = np.zeros(g.n, dtype=np.int64)
    for v in np.flatnonzero(alive):
        nb = g.indices[g.indptr[v]:g.indptr[v + 1]]
        deg[v] = int(alive[nb].sum())
    removed = []
    while True:
        _, cycle = _kernels.two_color(g.indptr, g.indices, alive)
        if not len(cycle):
            return removed
        v = int(min(cycle, key=lambda x: (-deg[x], x)))
        alive[v] = False
        removed.append(v)
        for w in g.adj[v]:
            deg[w] -= 1


def _two_core(g: Graph) -> np.ndarray:
    # vertices of degree <= 1 lie on no cycle, odd or otherwise
    deg = g.degrees.copy()
    alive = np.ones(g.n, dtype=np.bool_)
    stack = [int(v) for v in np.flatnonzero(deg <= 1)]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return alive


def _components(g: Graph, alive: np.ndarray) -> list[list[int]]:
    seen = ~alive
    comps = []
    for s in np.flatnonzero(alive):
        if seen[s]:
            continue
        seen[s] = True
        comp = [int(s)]
        head = 0
        while head < len(comp):
            u = comp[head]
            head += 1
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


class _OutOfBudget(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, alive: np.ndarray, budget: int, incumbent: list[int]):
        self.g = g
        self.alive = alive
        self.budget = budget
        self.nodes = 0
        self.best = list(incumbent)

    def packing_bound(self, first_cycle: np.ndarray, need: int) -> int:
        """Size of a greedy packing of vertex-disjoint odd cycles, capped at ``need``."""
        mask = self.alive.copy()
        cycle = first_cycle
        count = 0
        while len(cycle):
            count += 1
            if count >= need:
                break
            mask[cycle] = False
            cycle = _kernels.shortest_odd_cycle(self.g.indptr, self.g.indices, mask)
        return count

    def run(self, deleted: list[int], forbidden: frozenset[int]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        g = self.g
        cycle = _kernels.shortest_odd_cycle(g.indptr, g.indices, self.alive)
        if not len(cycle):
            if len(deleted) < len(self.best):
                self.best = list(deleted)
            return
        slack = len(self.best) - len(deleted)
        if slack <= 1:
            return
        if self.packing_bound(cycle, slack) >= slack:
            return
        # branch i deletes cycle[i] and keeps cycle[:i]; the branches are disjoint
        banned = set(forbidden)
        for v in cycle.tolist():
            if v in banned:
                continue
            self.alive[v] = False
            deleted.append(v)
            try:
                self.run(deleted, frozenset(banned))
            finally:
                deleted.pop()
                self.alive[v] = True
            banned.add(v)


def exact_oct(g: Graph, budget: int = DEFAULT_ORACLE_BUDGET) -> ExactSolution:
    """Minimum odd cycle transversal by branch and bound.

    Each search node finds a shortest odd cycle and branches on which of its
    vertices is deleted; a greedy packing of disjoint odd cycles gives the
    lower bound. Components of the 2-core are solved independently and share
    ``budget`` search nodes. If the budget runs out the best solution found so
    far is returned with ``optimal=False``.
    """
    core = _two_core(g)
    solution: list[int] = []
    optimal = True
    nodes = 0
    for comp in _components(g, core):
        alive = np.zeros(g.n, dtype=np.bool_)
        alive[comp] = True
        incumbent = greedy_oct(g, alive)
        if not incumbent:
            continue
        search = _Search(g, alive, budget - nodes, incumbent)
        try:
            search.run([], frozenset())
        except _OutOfBudget:
            optimal = False
        nodes += search.nodes
        solution.extend(search.best)
    return ExactSolution(frozenset(solution), optimal, nodes)
