"""Time each kernel under numba and under the pure-Python/numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeat 5]
"""

import argparse
import time

from diskoct import _kernels
from diskoct.geometry import build_disk_graph, generate_random_instance
from diskoct.graph import full_mask
from diskoct.harness import side_for


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    inst = generate_random_instance(args.n, 1, 5, side_for(args.n, 1, 5, 6.0), args.seed)
    cx, cy, r = inst.arrays()
    g = build_disk_graph(inst)
    alive = full_mask(g)
    print(f"n={g.n} m={g.m}")

    jobs = {
        "disk_edges": lambda k: k["disk_edges"](cx, cy, r),
        "two_color": lambda k: k["two_color"](g.indptr, g.indices, alive),
        "shortest_odd_cycle": lambda k: k["shortest_odd_cycle"](g.indptr, g.indices, alive),
        "triangles": lambda k: k["triangles"](g.indptr, g.indices),
        "degeneracy": lambda k: k["degeneracy"](g.indptr, g.indices),
    }
    print(f"{'kernel':<20}{'numba ms':>12}{'python ms':>12}{'speedup':>10}")
    for name, job in jobs.items():
        job(_kernels.ACCELERATED)  # compile outside the timed region
        fast = best_of(lambda: job(_kernels.ACCELERATED), args.repeat)
        slow = best_of(lambda: job(_kernels.FALLBACK), max(1, args.repeat // 2))
        print(f"{name:<20}{fast * 1e3:>12.2f}{slow * 1e3:>12.2f}{slow / max(fast, 1e-9):>10.1f}")


if __name__ == "__main__":
    main()
