"""Better-than-3 approximation for odd cycle transversal on disk graphs.

Per level of the recursion three candidate solutions are built from a
maximal triangle packing T of the current graph G:

* S1 takes all of V(T) plus a base OCT of G - V(T);
* S2 drops one vertex per packed triangle (the rest is R), takes R, a
  maximal packing T' of G - R and a base OCT of what is left;
* S3 (only when some triangle leaves V(T)) packs those outside triangles
  into T'', takes V(T'') & V(T) and recurses on the remainder.

The smallest candidate wins, ties going to S1, then S2, then S3. The
recursion is unrolled into a loop over levels and resolved bottom-up.
K4s are stripped first by :func:`solve` since the analysis needs a K4-free
graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from diskoct import _kernels
from diskoct.base import DEFAULT_ORACLE_BUDGET, BaseSubroutine, exact_oct
from diskoct.cliques import (
    Triangle,
    TrianglePacking,
    enumerate_triangles,
    find_k4,
    maximal_k4_packing,
    maximal_packing_of,
    maximal_triangle_packing,
    maximum_packing_size,
    outside_triangles,
)
from diskoct.derand import DerandState, K4Error, construct_derandomized_R, dead_vertices
from diskoct.graph import Graph, Subgraph, delete_vertices

RANDOMIZED = "randomized"
DERANDOMIZED = "derandomized"
VARIANTS = (RANDOMIZED, DERANDOMIZED)
DEFAULT_REPEATS = 5
CANDIDATES = ("S1", "S2", "S3")

__all__ = [
    "K4Error",
    "OctResult",
    "SolveDiagnostics",
    "SolverConfig",
    "compute_diagnostics",
    "dead_vertices",
    "sample_R",
    "solve",
    "solve_k4free",
    "verify_solution",
]


@dataclass(frozen=True)
class SolverConfig:
    variant: str = DERANDOMIZED
    seed: int = 0
    repeats: int | None = None
    base: BaseSubroutine = field(default_factory=BaseSubroutine)
    collect_diagnostics: bool = False
    diagnostics_budget: int = DEFAULT_ORACLE_BUDGET
    # shuffle triangle order before greedy packing; None keeps lexicographic order
    packing_seed: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        repeats = self.repeats
        if repeats is None:
            repeats = DEFAULT_REPEATS if self.variant == RANDOMIZED else 1
        if repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.variant == DERANDOMIZED and repeats != 1:
            raise ValueError("the derandomized variant runs exactly once (repeats=1)")
        object.__setattr__(self, "repeats", repeats)


@dataclass(frozen=True)
class SolveDiagnostics:
    a: Fraction | None
    b_hat: Fraction | None
    d_avg: Fraction | None
    dead_count: int
    s1: int
    s2: int
    s3: int | None
    depth: int
    r_size: int
    t_prime: int
    t_double_prime: int | None
    packing_size: int
    opt: int | None
    tri_outside: int | None
    base_exhausted: bool

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "a": num(self.a),
            "b_hat": num(self.b_hat),
            "d_avg": num(self.d_avg),
            "dead_count": self.dead_count,
            "s1": self.s1,
            "s2": self.s2,
            "s3": self.s3,
            "depth": self.depth,
            "r_size": self.r_size,
            "t_prime": self.t_prime,
            "t_double_prime": self.t_double_prime,
            "opt": self.opt,
            "base_exhausted": self.base_exhausted,
        }


@dataclass
class Level:
    """Everything computed at one level of the recursion, in that level's ids."""

    graph: Graph
    packing: TrianglePacking
    outside: list[Triangle]
    s1: frozenset[int]
    s2: frozenset[int]
    R: frozenset[int]
    R_index: int
    t_prime: TrianglePacking
    derand: DerandState | None
    s2_all: tuple[frozenset[int], ...]
    t_double: TrianglePacking | None = None
    removed: frozenset[int] = frozenset()
    child: Subgraph | None = None
    s3: frozenset[int] | None = None
    chosen: str = "S1"
    base_exhausted: bool = False


@dataclass(frozen=True)
class OctResult:
    solution: frozenset[int]
    chosen: str
    diagnostics: SolveDiagnostics | None = None
    top: Level | None = field(default=None, repr=False, compare=False)
    depth: int = 0
    k4_packing: TrianglePacking = field(default_factory=TrianglePacking)
    # ids of the K4-free kernel the top level ran on, inside the input graph
    kernel: Subgraph | None = field(default=None, repr=False, compare=False)
    # every recursion level, top first; ``top`` is levels[0]
    levels: tuple[Level, ...] = field(default=(), repr=False, compare=False)
    # output size of every repeat; the solution is the smallest of them
    run_sizes: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.solution)


def sample_R(t: TrianglePacking, rng: np.random.Generator) -> frozenset[int]:
    """Keep one uniformly random vertex per triangle and return the other two of each."""
    R = set()
    for tri in t.members:
        keep = int(rng.integers(len(tri)))
        R.update(v for j, v in enumerate(tri) if j != keep)
    return frozenset(R)


def verify_solution(g: Graph, s: Iterable[int]) -> bool:
    """True iff deleting ``s`` from ``g`` leaves a bipartite graph."""
    alive = np.ones(g.n, dtype=np.bool_)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range 0..{g.n - 1}")
        alive[v] = False
    _, cycle = _kernels.two_color(g.indptr, g.indices, alive)
    return len(cycle) == 0


def _lift_packing(sub: Subgraph, packing: TrianglePacking) -> TrianglePacking:
    lab = sub.labels
    return TrianglePacking(tuple(tuple(int(lab[v]) for v in tri) for tri in packing.members))


def _with_base(g: Graph, removed: frozenset[int], cfg: SolverConfig) -> tuple[frozenset[int], bool]:
    """``removed`` plus a base OCT of ``g - removed``, and whether the base ran out of budget."""
    rest = delete_vertices(g, removed)
    x = cfg.base.run(rest.graph)
    exhausted = cfg.base.kind == "exact" and not x.optimal
    return removed | frozenset(rest.lift(x.vertices)), exhausted


def _second_candidate(g: Graph, R: frozenset[int], cfg: SolverConfig):
    sub = delete_vertices(g, R)
    t_prime = _lift_packing(sub, maximal_triangle_packing(sub.graph, cfg.packing_seed))
    s2, exhausted = _with_base(g, R | t_prime.covered, cfg)
    return s2, t_prime, exhausted


def _level(g: Graph, cfg: SolverConfig, rng: np.random.Generator | None) -> Level:
    tris = enumerate_triangles(g)
    packing = maximal_triangle_packing(g, cfg.packing_seed, tris)
    outside = outside_triangles(g, packing, tris)

    s1, ex1 = _with_base(g, packing.covered, cfg)

    if cfg.variant == RANDOMIZED:
        state = None
        choices = (sample_R(packing, rng),)
    else:
        state = construct_derandomized_R(g, packing, check_k4=False)
        choices = state.R
    runs = [_second_candidate(g, R, cfg) for R in choices]
    best = min(range(len(runs)), key=lambda k: len(runs[k][0]))
    s2, t_prime, _ = runs[best]

    lv = Level(
        graph=g,
        packing=packing,
        outside=outside,
        s1=s1,
        s2=s2,
        R=choices[best],
        R_index=best,
        t_prime=t_prime,
        derand=state,
        s2_all=tuple(r[0] for r in runs),
        base_exhausted=ex1 or any(r[2] for r in runs),
    )
    if outside:
        lv.t_double = maximal_packing_of(outside)
        lv.removed = lv.t_double.covered & packing.covered
        lv.child = delete_vertices(g, lv.removed)
    return lv


def _run_once(g: Graph, cfg: SolverConfig, repeat: int) -> tuple[frozenset[int], list[Level]]:
    levels = []
    cur = g
    while True:
        rng = None
        if cfg.variant == RANDOMIZED:
            rng = np.random.default_rng([cfg.seed, repeat, len(levels)])
        lv = _level(cur, cfg, rng)
        levels.append(lv)
        if lv.child is None:
            break
        if lv.child.graph.n >= cur.n:
            raise RuntimeError("recursion did not shrink the graph")
        cur = lv.child.graph

    best: frozenset[int] = frozenset()
    for lv in reversed(levels):
        cands = [lv.s1, lv.s2]
        if lv.child is not None:
            lv.s3 = lv.removed | frozenset(lv.child.lift(best))
            cands.append(lv.s3)
        k = min(range(len(cands)), key=lambda i: len(cands[i]))
        lv.chosen = CANDIDATES[k]
        best = cands[k]
    return best, levels


def solve_k4free(g: Graph, cfg: SolverConfig | None = None) -> OctResult:
    """Run the approximation on a K4-free graph; raises :class:`K4Error` otherwise.

    The randomized variant is repeated ``cfg.repeats`` times with seeds
    derived from ``(seed, repeat, depth)`` and the smallest output is kept.
    """
    cfg = cfg or SolverConfig()
    k4 = find_k4(g)
    if k4 is not None:
        raise K4Error(f"graph contains K4 {k4}")
    best = None
    sizes = []
    for rep in range(cfg.repeats):
        sol, levels = _run_once(g, cfg, rep)
        sizes.append(len(sol))
        if best is None or len(sol) < len(best[0]):
            best = (sol, levels)
    sol, levels = best
    top = levels[0]
    diag = compute_diagnostics(g, top, cfg.diagnostics_budget, len(levels) - 1, oracle=cfg.collect_diagnostics)
    return OctResult(sol, top.chosen, diag, top=top, depth=len(levels) - 1, levels=tuple(levels),
                     run_sizes=tuple(sizes))


def solve(g: Graph, cfg: SolverConfig | None = None) -> OctResult:
    """Strip a maximal K4 packing C, then solve the K4-free rest; returns V(C) plus that solution."""
    cfg = cfg or SolverConfig()
    k4s = maximal_k4_packing(g)
    if not k4s.members:
        res = solve_k4free(g, cfg)
        return OctResult(res.solution, res.chosen, res.diagnostics, res.top, res.depth, k4s,
                         Subgraph(g, np.arange(g.n)), res.levels, res.run_sizes)
    kernel = delete_vertices(g, k4s.covered)
    res = solve_k4free(kernel.graph, cfg)
    solution = k4s.covered | frozenset(kernel.lift(res.solution))
    extra = len(k4s.covered)
    return OctResult(solution, res.chosen, res.diagnostics, res.top, res.depth, k4s, kernel, res.levels,
                     tuple(extra + k for k in res.run_sizes))


def compute_diagnostics(
    g: Graph,
    top: Level,
    budget: int = DEFAULT_ORACLE_BUDGET,
    depth: int = 0,
    opt: int | None = None,
    oracle: bool = True,
) -> SolveDiagnostics:
    """Measured counterparts of the analysis parameters for a top-level run on ``g``.

    ``a`` and ``b_hat`` divide by the exact optimum and are None when the
    oracle is skipped, does not finish within ``budget`` nodes, or the optimum
    is 0. Pass ``opt`` to reuse an optimum computed elsewhere.
    """
    tri = None
    if oracle:
        if opt is None:
            res = exact_oct(g, budget)
            opt = len(res) if res.optimal else None
        tri = maximum_packing_size(top.outside, budget)
    cover = top.packing.covered
    nb = g.nbrs
    d_avg = Fraction(sum(len(nb[v] & cover) for v in cover), len(cover)) if cover else None
    a = Fraction(len(top.packing), opt) if opt else None
    b_hat = Fraction(tri, opt) if opt and tri is not None else None
    return SolveDiagnostics(
        a=a,
        b_hat=b_hat,
        d_avg=d_avg,
        dead_count=len(dead_vertices(g, top.packing, top.R)),
        s1=len(top.s1),
        s2=len(top.s2),
        s3=None if top.s3 is None else len(top.s3),
        depth=depth,
        r_size=len(top.R),
        t_prime=len(top.t_prime),
        t_double_prime=None if top.t_double is None else len(top.t_double),
        packing_size=len(top.packing),
        opt=opt,
        tri_outside=tri,
        base_exhausted=top.base_exhausted,
    )
