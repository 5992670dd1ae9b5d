"""Hot inner loops over CSR adjacency arrays.

Every kernel exists twice: a numba ``@njit`` version and a fallback written
in plain Python/numpy. Set ``DISKOCT_DISABLE_NUMBA=1`` before import to force
the fallback. Both paths return identical results; the test suite checks this
and ``benchmarks/bench_kernels.py`` compares their speed.

CSR convention: ``indptr`` has length n+1, ``indices[indptr[v]:indptr[v+1]]``
lists the neighbours of v in increasing order. ``alive`` is a uint8/bool mask
of vertices that are still present.
"""

from __future__ import annotations

import heapq
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

NUMBA_ENABLED = numba is not None and os.environ.get("DISKOCT_DISABLE_NUMBA", "") not in ("1", "true", "yes")

# |coordinate| and radius bound under which int64 arithmetic cannot overflow.
SAFE_COORD = 1 << 29


# ---------------------------------------------------------------------------
# pairwise disk intersection


def _disk_edges_loop(cx, cy, r):
    n = cx.shape[0]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = cx[i] - cx[j]
            dy = cy[i] - cy[j]
            s = r[i] + r[j]
            if dx * dx + dy * dy <= s * s:
                count += 1
    us = np.empty(count, dtype=np.int64)
    vs = np.empty(count, dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = cx[i] - cx[j]
            dy = cy[i] - cy[j]
            s = r[i] + r[j]
            if dx * dx + dy * dy <= s * s:
                us[k] = i
                vs[k] = j
                k += 1
    return us, vs


def _disk_edges_numpy(cx, cy, r):
    n = cx.shape[0]
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    us, vs = np.triu_indices(n, k=1)
    dx = cx[us] - cx[vs]
    dy = cy[us] - cy[vs]
    s = r[us] + r[vs]
    hit = dx * dx + dy * dy <= s * s
    return us[hit].astype(np.int64), vs[hit].astype(np.int64)


# ---------------------------------------------------------------------------
# BFS two-colouring and odd cycles


def _cycle_from_conflict(parent, depth, u, w):
    # u, w sit on the same BFS level; walk both up to their lowest common ancestor
    left = []
    right = []
    a = u
    b = w
    while a != b:
        left.append(a)
        right.append(b)
        a = parent[a]
        b = parent[b]
    out = np.empty(2 * len(left) + 1, dtype=np.int64)
    out[0] = a
    k = 1
    for i in range(len(left) - 1, -1, -1):
        out[k] = left[i]
        k += 1
    for i in range(len(right)):
        out[k] = right[i]
        k += 1
    return out


def _two_color_loop(indptr, indices, alive):
    n = indptr.shape[0] - 1
    color = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        if not alive[s] or color[s] >= 0:
            continue
        color[s] = 0
        parent[s] = s
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if not alive[w]:
                    continue
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue[tail] = w
                    tail += 1
                elif color[w] == color[u]:
                    return color, _cycle_from_conflict(parent, depth, u, w)
    return color, np.empty(0, dtype=np.int64)


def _shortest_odd_cycle_loop(indptr, indices, alive):
    n = indptr.shape[0] - 1
    best = np.empty(0, dtype=np.int64)
    best_len = n + 2
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        if not alive[s]:
            continue
        if best_len == 3:
            break
        parent[s] = s
        depth[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        found = False
        while head < tail and not found:
            u = queue[head]
            head += 1
            # a conflict at this level closes a walk of length 2*depth+1
            if 2 * depth[u] + 1 >= best_len:
                break
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if not alive[w]:
                    continue
                if depth[w] < 0:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue[tail] = w
                    tail += 1
                elif depth[w] == depth[u]:
                    cyc = _cycle_from_conflict(parent, depth, u, w)
                    if cyc.shape[0] < best_len:
                        best = cyc
                        best_len = cyc.shape[0]
                    found = True
                    break
        for i in range(tail):
            depth[queue[i]] = -1
            parent[queue[i]] = -1
    return best


def _py_cycle(parent, u, w):
    left, right = [], []
    while u != w:
        left.append(u)
        right.append(w)
        u, w = parent[u], parent[w]
    return np.array([u] + left[::-1] + right, dtype=np.int64)


def _two_color_py(indptr, indices, alive):
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    live = alive.tolist()
    color = [-1] * n
    parent = [-1] * n
    for s in range(n):
        if not live[s] or color[s] >= 0:
            continue
        color[s] = 0
        parent[s] = s
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            cu = color[u]
            for w in nbr[ptr[u]:ptr[u + 1]]:
                if not live[w]:
                    continue
                if color[w] < 0:
                    color[w] = 1 - cu
                    parent[w] = u
                    queue.append(w)
                elif color[w] == cu:
                    return np.array(color, dtype=np.int64), _py_cycle(parent, u, w)
    return np.array(color, dtype=np.int64), np.empty(0, dtype=np.int64)


def _shortest_odd_cycle_py(indptr, indices, alive):
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    live = alive.tolist()
    best = None
    best_len = n + 2
    for s in range(n):
        if not live[s]:
            continue
        if best_len == 3:
            break
        depth = {s: 0}
        parent = {s: s}
        queue = [s]
        head = 0
        found = False
        while head < len(queue) and not found:
            u = queue[head]
            head += 1
            du = depth[u]
            if 2 * du + 1 >= best_len:
                break
            for w in nbr[ptr[u]:ptr[u + 1]]:
                if not live[w]:
                    continue
                dw = depth.get(w)
                if dw is None:
                    depth[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif dw == du:
                    cyc = _py_cycle(parent, u, w)
                    if len(cyc) < best_len:
                        best, best_len = cyc, len(cyc)
                    found = True
                    break
    return best if best is not None else np.empty(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# triangles


def _triangle_scan(indptr, indices, out, write):
    n = indptr.shape[0] - 1
    k = 0
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if v <= u:
                continue
            # merge the sorted neighbour lists of u and v above v
            i = p + 1
            j = indptr[v]
            iend = indptr[u + 1]
            jend = indptr[v + 1]
            while j < jend and indices[j] <= v:
                j += 1
            while i < iend and j < jend:
                a = indices[i]
                b = indices[j]
                if a == b:
                    if write:
                        out[k, 0] = u
                        out[k, 1] = v
                        out[k, 2] = a
                    k += 1
                    i += 1
                    j += 1
                elif a < b:
                    i += 1
                else:
                    j += 1
    return k


def _triangles_loop(indptr, indices):
    dummy = np.empty((0, 3), dtype=np.int64)
    count = _triangle_scan(indptr, indices, dummy, False)
    out = np.empty((count, 3), dtype=np.int64)
    _triangle_scan(indptr, indices, out, True)
    return out


def _triangles_py(indptr, indices):
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    higher = [set(w for w in nbr[ptr[u]:ptr[u + 1]] if w > u) for u in range(n)]
    out = []
    for u in range(n):
        hu = higher[u]
        for v in sorted(hu):
            for w in sorted(hu & higher[v]):
                out.append((u, v, w))
    if not out:
        return np.empty((0, 3), dtype=np.int64)
    return np.array(out, dtype=np.int64)


# ---------------------------------------------------------------------------
# degeneracy


def _degeneracy_heap(indptr, indices):
    n = indptr.shape[0] - 1
    deg = np.empty(n, dtype=np.int64)
    heap = []
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        heap.append((deg[v], v))
    heapq.heapify(heap)
    removed = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    k = 0
    c = 0
    while k < n:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order[k] = v
        k += 1
        if d > c:
            c = d
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return c, order


def _degeneracy_py(indptr, indices):
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    deg = [ptr[v + 1] - ptr[v] for v in range(n)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    c = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        c = max(c, d)
        for w in nbr[ptr[v]:ptr[v + 1]]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return c, np.array(order, dtype=np.int64)


# ---------------------------------------------------------------------------
# backend selection

FALLBACK = {
    "disk_edges": _disk_edges_numpy,
    "two_color": _two_color_py,
    "shortest_odd_cycle": _shortest_odd_cycle_py,
    "triangles": _triangles_py,
    "degeneracy": _degeneracy_py,
}

if numba is not None:
    _njit = numba.njit(cache=True)
    _cycle_from_conflict = _njit(_cycle_from_conflict)
    _triangle_scan = _njit(_triangle_scan)
    ACCELERATED = {
        "disk_edges": _njit(_disk_edges_loop),
        "two_color": _njit(_two_color_loop),
        "shortest_odd_cycle": _njit(_shortest_odd_cycle_loop),
        "triangles": _njit(_triangles_loop),
        "degeneracy": _njit(_degeneracy_heap),
    }
else:  # pragma: no cover
    ACCELERATED = dict(FALLBACK)

_active = "numba" if NUMBA_ENABLED else "python"


def use_backend(name: str) -> None:
    """Switch every kernel to ``"numba"`` or ``"python"`` for the rest of the process."""
    global _active, disk_edges, two_color, shortest_odd_cycle, triangles, degeneracy
    if name not in ("numba", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    table = ACCELERATED if name == "numba" else FALLBACK
    disk_edges = table["disk_edges"]
    two_color = table["two_color"]
    shortest_odd_cycle = table["shortest_odd_cycle"]
    triangles = table["triangles"]
    degeneracy = table["degeneracy"]
    _active = name


def backend() -> str:
    return _active


use_backend(_active)
