"""Acceptance checks, one per criterion.

Each test records a PASS/FAIL line; conftest prints them at the end of the
run. ``python3 tests/test_acceptance.py`` runs them without pytest.
"""

import io
import json
import math
import random
import sys
import time
from contextlib import redirect_stdout
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from families import disk_graphs, k4_free_graphs  # noqa: E402

from diskoct import bounds, cli  # noqa: E402
from diskoct.base import exact_oct  # noqa: E402
from diskoct.cliques import maximal_triangle_packing, maximum_packing_size  # noqa: E402
from diskoct.derand import construct_derandomized_R, dead_vertices, derand_violations  # noqa: E402
from diskoct.graph import Graph, degeneracy  # noqa: E402
from diskoct.harness import check_oct, parse_config  # noqa: E402
from diskoct.solver import sample_R, solve  # noqa: E402

REPORT: list[str] = []

HEADLINE = 2.99993033741
CONFIGS = ("derandomized:exact", "derandomized:greedy", "randomized:exact", "randomized:greedy")


def record(num, title, ok, detail):
    REPORT.append(f"[{num:>2}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    return ok


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def brute_force_oct(g: Graph) -> int:
    for k in range(g.n + 1):
        if any(check_oct(g, combo) for combo in combinations(range(g.n), k)):
            return k
    raise AssertionError("unreachable")


def test_headline_ratio_figure():
    t0 = time.perf_counter()
    code, out = run_cli(["bound", "--d", "22", "--rho0", "2.25"])
    elapsed = time.perf_counter() - t0
    rho = json.loads(out)["rho"]
    ok = code == 0 and abs(rho - HEADLINE) < 1e-9 and elapsed < 1.0
    record(1, "bound --d 22 --rho0 2.25", ok, f"rho={rho!r} want {HEADLINE} (|diff|={abs(rho - HEADLINE):.3e}), {elapsed:.3f}s")
    assert ok


def test_quadratic_consistency():
    rng = random.Random(2)
    t0 = time.perf_counter()
    worst_res = worst_gap = 0.0
    for _ in range(100):
        kappa = 1 - rng.random()  # (0, 1]
        rho0 = rng.uniform(1, 3)
        root = bounds.larger_root(kappa, rho0)
        worst_res = max(worst_res, abs(float(bounds.quadratic(root, kappa, rho0))))
        a, b = bounds.worst_case_ab(kappa, rho0, root)
        r = [float(x) for x in bounds.candidate_ratios(a, b, kappa, rho0, root)]
        worst_gap = max(worst_gap, abs(r[0] - r[1]), abs(r[1] - r[2]), abs(r[0] - r[2]))
    elapsed = time.perf_counter() - t0
    ok = worst_res < 1e-12 and worst_gap < 1e-9 and elapsed < 1.0
    record(2, "quadratic residual and candidate agreement", ok,
           f"max residual {worst_res:.2e}, max pairwise gap {worst_gap:.2e}, {elapsed:.3f}s")
    assert ok


def test_validity_on_large_family():
    t0 = time.perf_counter()
    failures = []
    count = 0
    for i, g, seed in disk_graphs(1000, n_min=10, n_max=200, seed=3):
        for c in CONFIGS:
            res = solve(g, parse_config(c, seed))
            count += 1
            if not check_oct(g, res.solution):
                failures.append((i, c))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 120
    record(3, "valid OCT on 1000 instances x 4 configs", ok, f"{count} runs, {len(failures)} failures, {elapsed:.1f}s")
    assert ok, failures[:5]


def _oracle_family():
    return disk_graphs(200, n_min=10, n_max=40, seed=4)


@pytest.fixture(scope="module")
def oracle_runs():
    """Criterion-4 instances solved by both variants with the exact base."""
    t0 = time.perf_counter()
    runs = []
    for i, g, seed in _oracle_family():
        opt = exact_oct(g)
        assert opt.optimal
        for variant in ("derandomized", "randomized"):
            runs.append((i, g, variant, len(opt), solve(g, parse_config(f"{variant}:exact", seed))))
    return runs, time.perf_counter() - t0


def test_oracle_ratio(oracle_runs):
    runs, elapsed = oracle_runs
    worst = {}
    bad = []
    for i, g, variant, opt, res in runs:
        if not check_oct(g, res.solution) or len(res) < opt:
            bad.append((i, variant, "invalid"))
        if opt:
            r = len(res) / opt
            worst[variant] = max(worst.get(variant, 0), r)
            if r > 3:
                bad.append((i, variant, r))
        elif len(res):
            bad.append((i, variant, "nonempty on bipartite input"))
    ok = not bad and elapsed < 300
    detail = ", ".join(f"max {v} {r:.4f}" for v, r in sorted(worst.items()))
    record(4, "size/opt <= 3 on 200 instances (n <= 40)", ok, f"{detail}, {len(bad)} violations, {elapsed:.1f}s")
    assert ok, bad[:5]


def test_degeneracy_of_k4_reduced():
    t0 = time.perf_counter()
    worst = 0
    bad = 0
    for _, k, _ in k4_free_graphs(200, seed=5):
        c, _ = degeneracy(k)
        worst = max(worst, c)
        bad += c > 11
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 30
    record(5, "degeneracy <= 11 on 200 K4-reduced instances", ok, f"max {worst}, {bad} violations, {elapsed:.1f}s")
    assert ok


def test_derandomization_invariants():
    t0 = time.perf_counter()
    bad_instances = 0
    by_kind: dict[str, int] = {}
    for _, k, _ in k4_free_graphs(200, seed=6):
        t = maximal_triangle_packing(k)
        state = construct_derandomized_R(k, t)
        found = derand_violations(k, t, state)
        bad_instances += bool(found)
        for msg in found:
            kind = "size floor |T|/400^3" if "400^3" in msg else msg.split(" ")[0]
            by_kind[kind] = by_kind.get(kind, 0) + 1
    elapsed = time.perf_counter() - t0
    ok = bad_instances == 0 and elapsed < 60
    record(6, "derandomization invariants on 200 K4-free instances", ok,
           f"{bad_instances} instances with violations {by_kind or ''}, {elapsed:.1f}s")
    assert ok


def test_expectation_bounds_monte_carlo():
    samples = 2000
    t0 = time.perf_counter()
    hit_fail = dead_fail = vertices = instances = 0
    for i, k, seed in k4_free_graphs(400, n_min=10, n_max=30, seed=7):
        t = maximal_triangle_packing(k)
        if not len(t):
            continue
        opt = exact_oct(k)
        assert opt.optimal
        s_opt = set(opt.vertices)
        cover = t.covered
        deg = {v: len(k.nbrs[v] & cover) for v in cover}
        rng = np.random.default_rng([seed, i])
        hits = np.empty(samples)
        dead_counts = dict.fromkeys(cover, 0)
        for s in range(samples):
            R = sample_R(t, rng)
            hits[s] = len(R & s_opt)
            for v in dead_vertices(k, t, R):
                dead_counts[v] += 1
        r_size = 2 * len(t)
        se = hits.std(ddof=1) / math.sqrt(samples)
        hit_fail += hits.mean() < r_size / 3 - 3 * se
        for v in cover:
            p0 = float(bounds.dead_probability_lower_bound(deg[v]))
            # standard error under the bound itself: an empirical one collapses to 0 on rare events
            se_v = math.sqrt(p0 * (1 - p0) / samples)
            dead_fail += dead_counts[v] / samples < p0 - 3 * se_v
            vertices += 1
        instances += 1
        if instances == 50:
            break
    elapsed = time.perf_counter() - t0
    ok = instances == 50 and hit_fail == 0 and dead_fail == 0 and elapsed < 120
    record(7, "Monte Carlo expectation bounds", ok,
           f"{instances} instances, |R & S_opt| failures {hit_fail}, dead-frequency failures {dead_fail}/{vertices} vertices, {elapsed:.1f}s")
    assert ok


def test_dead_vertex_inequality(oracle_runs):
    runs, _ = oracle_runs
    checked = bad = skipped = 0
    for i, g, variant, opt, res in runs:
        for lv in res.levels:
            tri = maximum_packing_size(lv.outside)
            if tri is None:
                skipped += 1
                continue
            R = lv.R
            D = dead_vertices(lv.graph, lv.packing, R)
            # |T'| <= (a + b) opt - |R|/3 - |D|/3 with a opt = |T| and b opt = tri, times 3
            checked += 1
            bad += 3 * len(lv.t_prime) > 3 * len(lv.packing) + 3 * tri - len(R) - len(D)
    ok = bad == 0 and checked > 0
    record(8, "|T'| <= (a+b) opt - |R|/3 - |D|/3", ok, f"{checked} levels checked, {bad} violations, {skipped} skipped")
    assert ok


NAMED = {
    "K4": Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    "C5": Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)]),
    "K5": Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]),
    "W5": Graph.from_edges(6, [(i, (i + 1) % 5) for i in range(5)] + [(i, 5) for i in range(5)]),
    "two triangles": Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
    "C7 with chord": Graph.from_edges(7, [(i, (i + 1) % 7) for i in range(7)] + [(0, 3)]),
    "K33": Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)]),
    "Petersen": Graph.from_edges(
        10,
        [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)],
    ),
    "empty": Graph.empty(0),
}


def test_exact_oracle_against_brute_force():
    t0 = time.perf_counter()
    rng = random.Random(9)
    cases = list(NAMED.items())
    for j in range(500):
        n = rng.randint(0, 10)
        p = rng.choice((0.2, 0.35, 0.5, 0.7))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        cases.append((f"random {j}", Graph.from_edges(n, edges)))
    bad = []
    for name, g in cases:
        res = exact_oct(g)
        if not res.optimal or len(res) != brute_force_oct(g):
            bad.append(name)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    record(9, "exact_oct equals brute force (n <= 10)", ok, f"{len(cases)} graphs, {len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad[:5]


def test_determinism(tmp_path):
    g_file = tmp_path / "g.txt"
    code, disks = run_cli(["generate", "--n", "80", "--side", "45", "--seed", "11"])
    (tmp_path / "d.txt").write_text(disks)
    run_cli(["build-graph", str(tmp_path / "d.txt"), "-o", str(g_file)])
    outs = []
    for _ in range(2):
        for variant in ("derandomized", "randomized"):
            outs.append(run_cli(["solve", str(g_file), "--variant", variant, "--seed", "5", "--diagnostics"]))
    same_solve = outs[0] == outs[2] and outs[1] == outs[3] and all(c == 0 for c, _ in outs)
    blobs = []
    for k in range(2):
        d = tmp_path / f"exp{k}"
        argv = ["experiment", "--count", "12", "--n-max", "30", "--seed", "3", "--out", str(d)]
        for c in CONFIGS:
            argv += ["--config", c]
        assert run_cli(argv)[0] == 0
        blobs.append(((d / "records.csv").read_bytes(), (d / "summary.json").read_bytes()))
    ok = same_solve and blobs[0] == blobs[1]
    record(10, "byte-identical solve and experiment output", ok,
           f"solve identical={same_solve}, experiment identical={blobs[0] == blobs[1]}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
