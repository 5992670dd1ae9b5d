"""Experiment runner: random disk instances, every solver config, exact oracle.

CSV columns (one row per instance and config):

    instance_id, n, m, config, size, opt, ratio, a, b_hat, d_avg,
    dead_count, depth, ms

``opt``/``ratio`` are empty when the oracle ran out of budget; ``ms`` is
empty unless timing is requested, so default output is byte-reproducible.
The JSON summary carries ``schema: 1``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from diskoct.base import DEFAULT_ORACLE_BUDGET, BaseSubroutine, exact_oct
from diskoct.geometry import DiskInstance, build_disk_graph, format_disks, generate_random_instance
from diskoct.graph import Graph, format_edge_list
from diskoct.solver import SolverConfig, compute_diagnostics, solve

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "instance_id", "n", "m", "config", "size", "opt", "ratio",
    "a", "b_hat", "d_avg", "dead_count", "depth", "ms",
)
SUMMARY_SCHEMA = 1


class VerificationError(RuntimeError):
    def __init__(self, message: str, bundle: Path | None = None):
        super().__init__(message)
        self.bundle = bundle


@dataclass(frozen=True)
class ExperimentSpec:
    count: int
    n_min: int = 10
    n_max: int = 40
    r_min: int = 1
    r_max: int = 5
    side: int | None = None
    # used when side is None: pick the box so the expected degree is about this
    target_degree: float = 6.0
    seed: int = 0
    configs: tuple[str, ...] = ("derandomized:exact",)
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    base_budget: int = 1_000_000
    out_dir: Path | None = None
    timing: bool = False

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be >= 0")
        if not 0 <= self.n_min <= self.n_max:
            raise ValueError("need 0 <= n_min <= n_max")
        if not self.configs:
            raise ValueError("at least one solver config is required")
        for c in self.configs:
            parse_config(c)


@dataclass
class ExperimentRecord:
    instance_id: int
    n: int
    m: int
    config: str
    size: int
    opt: int | None
    ratio: float | None
    a: float | None
    b_hat: float | None
    d_avg: float | None
    dead_count: int
    depth: int
    ms: float | None = None
    diagnostics: dict = field(default_factory=dict, repr=False)

    def row(self) -> list[str]:
        def cell(x):
            return "" if x is None else repr(x) if isinstance(x, float) else str(x)

        return [cell(getattr(self, c)) for c in CSV_COLUMNS]


def parse_config(text: str, seed: int = 0, base_budget: int = 1_000_000) -> SolverConfig:
    """``variant:base`` such as ``derandomized:exact`` or ``randomized:greedy``."""
    variant, _, kind = text.partition(":")
    return SolverConfig(variant=variant, seed=seed, base=BaseSubroutine(kind or "exact", base_budget))


def side_for(n: int, r_min: int, r_max: int, target_degree: float) -> int:
    # expected degree ~ n * pi * (2 r_mean)^2 / side^2, ignoring boundary effects
    r_mean = (r_min + r_max) / 2
    return max(1, round(math.sqrt(n * math.pi * (2 * r_mean) ** 2 / max(target_degree, 1e-9))))


def make_instance(spec: ExperimentSpec, index: int) -> tuple[DiskInstance, int]:
    """Instance ``index`` of the family and the solver seed that goes with it."""
    ss = np.random.SeedSequence([spec.seed, index])
    inst_seed, solver_seed, n_draw = ss.generate_state(3, dtype=np.uint32).tolist()
    n = spec.n_min + n_draw % (spec.n_max - spec.n_min + 1)
    side = spec.side if spec.side is not None else side_for(n, spec.r_min, spec.r_max, spec.target_degree)
    return generate_random_instance(n, spec.r_min, spec.r_max, side, inst_seed), solver_seed


def check_oct(g: Graph, solution) -> bool:
    """Independent bipartiteness check of ``g - solution`` (plain BFS, no kernels)."""
    gone = set(solution)
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in gone or s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in gone:
                    continue
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def _write_repro(spec: ExperimentSpec, index: int, inst: DiskInstance, g: Graph, config: str, seed: int) -> Path | None:
    if spec.out_dir is None:
        return None
    bundle = Path(spec.out_dir) / "repro" / f"instance_{index}"
    bundle.mkdir(parents=True, exist_ok=True)
    (bundle / "disks.txt").write_text(format_disks(inst))
    (bundle / "graph.txt").write_text(format_edge_list(g))
    (bundle / "run.json").write_text(json.dumps({"instance_id": index, "config": config, "seed": seed}, indent=2) + "\n")
    return bundle


def run_instance(spec: ExperimentSpec, index: int) -> list[ExperimentRecord]:
    inst, solver_seed = make_instance(spec, index)
    g = build_disk_graph(inst)
    oracle = exact_oct(g, spec.oracle_budget)
    opt = len(oracle) if oracle.optimal else None
    records = []
    for config in spec.configs:
        cfg = parse_config(config, solver_seed, spec.base_budget)
        t0 = time.perf_counter()
        res = solve(g, cfg)
        ms = (time.perf_counter() - t0) * 1000
        if not check_oct(g, res.solution):
            bundle = _write_repro(spec, index, inst, g, config, solver_seed)
            raise VerificationError(f"instance {index}, config {config}: output is not an OCT", bundle)
        if opt is not None and len(res) < opt:
            bundle = _write_repro(spec, index, inst, g, config, solver_seed)
            raise VerificationError(f"instance {index}, config {config}: size {len(res)} below optimum {opt}", bundle)
        kernel = res.kernel.graph
        # the oracle optimum carries over only when no K4 was stripped
        kernel_opt = opt if not res.k4_packing.members else None
        diag = compute_diagnostics(kernel, res.top, spec.oracle_budget, res.depth, opt=kernel_opt)
        records.append(
            ExperimentRecord(
                instance_id=index,
                n=g.n,
                m=g.m,
                config=config,
                size=len(res),
                opt=opt,
                ratio=(len(res) / opt) if opt else None,
                a=None if diag.a is None else float(diag.a),
                b_hat=None if diag.b_hat is None else float(diag.b_hat),
                d_avg=None if diag.d_avg is None else float(diag.d_avg),
                dead_count=diag.dead_count,
                depth=diag.depth,
                ms=round(ms, 3) if spec.timing else None,
                diagnostics=diag.to_dict(),
            )
        )
    return records


def summarize(spec: ExperimentSpec, records: list[ExperimentRecord]) -> dict:
    per_config = {}
    for config in spec.configs:
        rows = [r for r in records if r.config == config]
        ratios = [r.ratio for r in rows if r.ratio is not None]
        per_config[config] = {
            "instances": len(rows),
            "opt_known": sum(r.opt is not None for r in rows),
            "max_ratio": max(ratios) if ratios else None,
            "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
        }
    spec_fields = {k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(spec).items() if k not in ("out_dir", "timing")}
    spec_fields["configs"] = list(spec.configs)
    return {
        "schema": SUMMARY_SCHEMA,
        "spec": spec_fields,
        "records": len(records),
        "violations": 0,
        "configs": per_config,
    }


def records_csv(records: list[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def run_experiment(spec: ExperimentSpec) -> list[ExperimentRecord]:
    """Generate, solve, verify; write ``records.csv`` and ``summary.json`` when ``out_dir`` is set.

    Raises :class:`VerificationError` (after writing a repro bundle) if any
    solver output fails the independent check.
    """
    records = []
    for i in range(spec.count):
        records.extend(run_instance(spec, i))
        log.debug("instance %d done", i)
    records.sort(key=lambda r: (r.instance_id, spec.configs.index(r.config)))
    if spec.out_dir is not None:
        out = Path(spec.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "records.csv").write_text(records_csv(records))
        (out / "summary.json").write_text(json.dumps(summarize(spec, records), indent=2) + "\n")
    return records
