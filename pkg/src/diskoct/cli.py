"""Command-line interface.

Exit codes: 0 success, 1 verification or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from diskoct import _kernels
from diskoct.base import DEFAULT_ORACLE_BUDGET, BaseSubroutine, exact_oct
from diskoct.geometry import build_disk_graph, format_disks, generate_random_instance, read_disks
from diskoct.graph import format_edge_list, read_edge_list
from diskoct.harness import ExperimentSpec, VerificationError, check_oct, run_experiment
from diskoct.solver import VARIANTS, SolverConfig, solve

log = logging.getLogger("diskoct")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_generate(args) -> int:
    if args.n < 0 or args.side < 0:
        raise UsageError("--n and --side must be non-negative")
    if not 1 <= args.r_min <= args.r_max:
        raise UsageError("need 1 <= --r-min <= --r-max")
    inst = generate_random_instance(args.n, args.r_min, args.r_max, args.side, args.seed)
    _emit(format_disks(inst), args.output)
    return 0


def cmd_build_graph(args) -> int:
    _emit(format_edge_list(build_disk_graph(read_disks(args.input))), args.output)
    return 0


def cmd_solve(args) -> int:
    g = read_edge_list(args.input)
    try:
        cfg = SolverConfig(
            variant=args.variant,
            seed=args.seed,
            repeats=args.repeats,
            base=BaseSubroutine(args.base, args.base_budget),
            collect_diagnostics=args.diagnostics,
            diagnostics_budget=args.oracle_budget,
        )
    except ValueError as e:
        raise UsageError(str(e)) from e
    res = solve(g, cfg)
    if not check_oct(g, res.solution):
        log.error("solver output failed verification")
        return 1
    d = res.diagnostics.to_dict() if res.diagnostics else {}
    doc = {
        "n": g.n,
        "m": g.m,
        "size": len(res),
        "solution": sorted(res.solution),
        "chosen": res.chosen,
        "variant": cfg.variant,
        "seed": cfg.seed,
        "repeats": cfg.repeats,
        "run_sizes": list(res.run_sizes),
        "base": cfg.base.kind,
        "k4_removed": len(res.k4_packing),
        "diagnostics": d,
    }
    _emit(_dump(doc), args.output)
    return 0


def cmd_exact(args) -> int:
    g = read_edge_list(args.input)
    res = exact_oct(g, args.budget)
    doc = {
        "n": g.n,
        "m": g.m,
        "size": len(res),
        "solution": sorted(res.vertices),
        "optimal": res.optimal,
        "nodes": res.nodes_explored,
    }
    _emit(_dump(doc), args.output)
    return 0


def _read_solution(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("{"):
        return [int(v) for v in json.loads(text)["solution"]]
    if text.startswith("["):
        return [int(v) for v in json.loads(text)]
    return [int(tok) for tok in text.replace(",", " ").split()]


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    if (args.solution is None) == (args.solution_file is None):
        raise UsageError("give exactly one of --solution or --solution-file")
    try:
        raw = args.solution if args.solution is not None else Path(args.solution_file).read_text()
        sol = _read_solution(raw)
    except (ValueError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot parse solution: {e}") from e
    bad = [v for v in sol if not 0 <= v < g.n]
    if bad:
        print(f"invalid: vertices out of range {bad}")
        return 1
    ok = check_oct(g, sol)
    print("valid" if ok else "invalid: remaining graph has an odd cycle")
    return 0 if ok else 1


def cmd_bound(args) -> int:
    from diskoct import bounds

    if (args.d is not None) + (args.kappa is not None) + args.derandomized != 1:
        raise UsageError("give exactly one of --d, --kappa, --derandomized")
    try:
        if args.derandomized:
            kappa = bounds.kappa_derandomized()
        else:
            kappa = bounds.BoundParams(args.rho0, d=args.d, kappa_value=args.kappa).kappa
        res = bounds.bound(kappa, args.rho0, args.rho)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e)) from e
    _emit(_dump(res.to_dict()), args.output)
    return 0


def cmd_experiment(args) -> int:
    try:
        spec = ExperimentSpec(
            count=args.count,
            n_min=args.n_min,
            n_max=args.n_max,
            r_min=args.r_min,
            r_max=args.r_max,
            side=args.side,
            target_degree=args.target_degree,
            seed=args.seed,
            configs=tuple(args.config or ("derandomized:exact",)),
            oracle_budget=args.oracle_budget,
            base_budget=args.base_budget,
            out_dir=Path(args.out),
            timing=args.timing,
        )
    except ValueError as e:
        raise UsageError(str(e)) from e
    try:
        records = run_experiment(spec)
    except VerificationError as e:
        log.error("%s; repro bundle at %s", e, e.bundle)
        return 1
    print(f"{len(records)} records written to {spec.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diskoct", description="Odd cycle transversal on disk graphs.")
    p.add_argument("--backend", choices=("numba", "python"), help="kernel implementation (default numba when available)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        return sp

    def out(sp):
        sp.add_argument("-o", "--output", help="write here instead of stdout")

    sp = add("generate", cmd_generate, "random disk instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r-min", type=int, default=1)
    sp.add_argument("--r-max", type=int, default=5)
    sp.add_argument("--side", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    out(sp)

    sp = add("build-graph", cmd_build_graph, "disk file to edge list")
    sp.add_argument("input")
    out(sp)

    sp = add("solve", cmd_solve, "approximate OCT of an edge-list graph")
    sp.add_argument("input")
    sp.add_argument("--variant", choices=VARIANTS, default="derandomized")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--repeats", type=int)
    sp.add_argument("--base", choices=("exact", "greedy"), default="exact")
    sp.add_argument("--base-budget", type=int, default=1_000_000)
    sp.add_argument("--diagnostics", action=argparse.BooleanOptionalAction, default=False,
                    help="run the exact oracle for a and b_hat")
    sp.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    out(sp)

    sp = add("exact", cmd_exact, "minimum OCT by branch and bound")
    sp.add_argument("input")
    sp.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    sp.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the search is deterministic")
    out(sp)

    sp = add("verify", cmd_verify, "check that a vertex set is an OCT")
    sp.add_argument("graph")
    sp.add_argument("--solution", help="ids separated by commas or spaces")
    sp.add_argument("--solution-file", help="ids, a JSON list, or the JSON output of solve")

    sp = add("bound", cmd_bound, "closed-form approximation ratio")
    sp.add_argument("--d", type=float, help="average degree in G[V(T)]")
    sp.add_argument("--kappa", type=float)
    sp.add_argument("--derandomized", action="store_true", help="use the 400^-3 dead fraction")
    sp.add_argument("--rho0", type=float, default=1.0, help="base-subroutine ratio")
    sp.add_argument("--rho", type=float, help="evaluate (a, b) and the candidate ratios here")
    out(sp)

    sp = add("experiment", cmd_experiment, "ratio measurement against the exact oracle")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=10)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--r-min", type=int, default=1)
    sp.add_argument("--r-max", type=int, default=5)
    sp.add_argument("--side", type=int, help="box side; default scales with n to --target-degree")
    sp.add_argument("--target-degree", type=float, default=6.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--config", action="append", help="variant:base, repeatable (default derandomized:exact)")
    sp.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    sp.add_argument("--base-budget", type=int, default=1_000_000)
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--timing", action="store_true", help="fill the ms column (output no longer reproducible)")
    return p


def cli_dispatch(argv=None) -> int:
    """Run one command line; returns the exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.backend:
        _kernels.use_backend(args.backend)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"diskoct {args.command}: error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"diskoct {args.command}: {e}", file=sys.stderr)
        return 1


main = cli_dispatch


if __name__ == "__main__":
    sys.exit(main())
