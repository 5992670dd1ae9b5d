"""Deterministic construction of three candidate sets R1, R2, R3.

Replaces the random choice of one kept vertex per packed triangle. At least
one of the three sets hits an optimum solution in a third of its vertices,
and every vertex of the matching block I_i is dead with respect to it.
"""

from __future__ import annotations

from dataclasses import dataclass

from diskoct.cliques import TrianglePacking, find_k4
from diskoct.graph import Graph, bfs_ball, greedy_distance3_mis

# degree threshold in G[V(T)] above which a vertex counts as "high"
HIGH_DEGREE = 100
BLOCKS = 3


class K4Error(ValueError):
    """Raised when an operation that needs a K4-free graph is handed a K4."""


@dataclass(frozen=True)
class DerandState:
    H_prime: frozenset[int]
    H: frozenset[int]
    L: frozenset[int]
    I: tuple[int, ...]
    I_blocks: tuple[tuple[int, ...], ...]
    R: tuple[frozenset[int], ...]
    H_triangles: tuple[tuple[int, ...], ...]
    L_triangles: tuple[tuple[int, ...], ...]

    def R_prime(self, i: int) -> frozenset[int]:
        return self.R[i] & self.L


def dead_vertices(g: Graph, t: TrianglePacking, R) -> set[int]:
    """Vertices of V(T) outside R that lie in no triangle of G[V(T) \\ R]."""
    rest = t.covered - frozenset(R)
    nb = g.nbrs
    dead = set()
    for v in rest:
        around = nb[v] & rest
        if not any(nb[u] & around for u in around):
            dead.add(v)
    return dead


def _neighbourhood_in(g: Graph, vertices, domain: frozenset[int]) -> set[int]:
    out: set[int] = set()
    for v in vertices:
        out |= g.nbrs[v] & domain
    return out


def construct_derandomized_R(g: Graph, t: TrianglePacking, check_k4: bool = True) -> DerandState:
    if check_k4:
        k4 = find_k4(g)
        if k4 is not None:
            raise K4Error(f"graph contains K4 {k4}")
    cover = t.covered
    nb = g.nbrs
    h_prime = frozenset(v for v in cover if len(nb[v] & cover) > HIGH_DEGREE)
    h_tris = tuple(T for T in t.members if h_prime.intersection(T))
    l_tris = tuple(sorted(T for T in t.members if not h_prime.intersection(T)))
    H = frozenset(v for T in h_tris for v in T)
    L = cover - H

    I = tuple(greedy_distance3_mis(g, L))
    size = len(I) // BLOCKS
    blocks = tuple(I[k * size:(k + 1) * size] for k in range(BLOCKS))
    block_nbhd = [_neighbourhood_in(g, blk, L) for blk in blocks]

    R = [set(H) | block_nbhd[k] for k in range(BLOCKS)]
    for T in l_tris:
        x1, x2, x3 = T
        hit = [k for k in range(BLOCKS) if R[k].intersection(T)]
        if not hit:
            R[0].update((x1, x2))
            R[1].update((x2, x3))
            R[2].update((x3, x1))
            continue
        if len(hit) > 1:
            raise RuntimeError(f"triangle {T} touches the neighbourhoods of several blocks")
        i = hit[0]
        anchors = [v for v in blocks[i] if nb[v].intersection(T)]
        if len(anchors) != 1:
            raise RuntimeError(f"triangle {T} is adjacent to {len(anchors)} vertices of block {i}")
        v = anchors[0]
        adjacent = nb[v] & L & set(T)
        free = [x for x in T if x not in adjacent]
        if not free:
            raise K4Error(f"vertex {v} is adjacent to all of {T}")
        # the kept-out vertex x3 is the highest-id vertex outside N(v)
        x3 = max(free)
        x1, x2 = sorted(x for x in T if x != x3)
        i1, i2 = [k for k in range(BLOCKS) if k != i]
        R[i].update((x1, x2))
        R[i1].update((x2, x3))
        R[i2].update((x3, x1))

    return DerandState(
        H_prime=h_prime,
        H=H,
        L=L,
        I=I,
        I_blocks=blocks,
        R=tuple(frozenset(r) for r in R),
        H_triangles=h_tris,
        L_triangles=l_tris,
    )


def derand_violations(g: Graph, t: TrianglePacking, state: DerandState) -> list[str]:
    """Check the construction's guarantees; an empty list means all hold.

    Checks that every light triangle puts exactly two vertices in each R_i and
    each of its vertices in exactly two R_i; that R_i avoids I_i but holds its
    neighbourhood in L; that heavy triangles sit inside every R_i; block sizes,
    deadness of every block vertex, the |I_i| >= |T|/400^3 bound, and
    distance-3 independence and maximality of I.
    """
    out = []
    L = state.L
    nb = g.nbrs
    for T in state.L_triangles:
        for k, r in enumerate(state.R):
            if len(r.intersection(T)) != 2:
                out.append(f"pairs: triangle {T} has {len(r.intersection(T))} vertices in R{k + 1}")
        for x in T:
            c = sum(x in r for r in state.R)
            if c != 2:
                out.append(f"cover: vertex {x} lies in {c} of the R sets")
    for k, (blk, r) in enumerate(zip(state.I_blocks, state.R)):
        if r.intersection(blk):
            out.append(f"block: R{k + 1} meets I{k + 1}")
        if not _neighbourhood_in(g, blk, L) <= r:
            out.append(f"block: N(I{k + 1}) not inside R{k + 1}")
        for T in state.H_triangles:
            if not r.issuperset(T):
                out.append(f"heavy: H-triangle {T} not inside R{k + 1}")
        if len(blk) != len(state.I) // BLOCKS:
            out.append(f"|I{k + 1}| = {len(blk)} != floor(|I|/3)")
        if not set(blk) <= set(state.I):
            out.append(f"I{k + 1} is not a subset of I")
        dead = dead_vertices(g, t, r)
        if not set(blk) <= dead:
            out.append(f"vertices {sorted(set(blk) - dead)} of I{k + 1} are not dead w.r.t. R{k + 1}")
        if len(blk) * 400**3 < len(t):
            out.append(f"|I{k + 1}| = {len(blk)} < |T|/400^3 with |T| = {len(t)}")
    if len(set().union(*state.I_blocks)) != sum(len(b) for b in state.I_blocks):
        out.append("I blocks overlap")
    I = set(state.I)
    for v in state.I:
        close = bfs_ball(g, v, 3, L) & I
        if close != {v}:
            out.append(f"I not distance-3 independent at {v}: {sorted(close - {v})}")
    for u in L - I:
        if not bfs_ball(g, u, 3, L) & I:
            out.append(f"I not maximal: {u} could be added")
    if not all(len(nb[v] & t.covered) > HIGH_DEGREE for v in state.H_prime):
        out.append("H' contains a low-degree vertex")
    return out
