"""Command-line frontend: solve, check, simulate, bench.

Exit codes: 0 success, 2 input error, 3 solver/oracle disagreement,
4 oracle enumeration cap exceeded, 5 gamble unsupported for simulation.
All numbers print with full round-trip precision; infinite times print as
the literal string "inf" in every format.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .bench import BenchConfig, run_benchmark, write_csv
from .errors import (
    EnumerationCapError,
    SimulationUnsupportedError,
    ValidationError,
)
from .graph import Gamble, Graph
from .instances import parse_instance
from .oracle import ENUMERATION_CAP, evaluate_stationary_strategy, oracle_optimal, strategy_space_size
from .simulate import simulate_chase
from .solver import (
    Solution,
    chase_path,
    identity_strategy,
    solve_iterative,
    solve_priority,
    times_close,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3
EXIT_CAP = 4
EXIT_UNSUPPORTED = 5


def _fmt(x: float):
    return "inf" if math.isinf(x) else float(x)


def _fmt_str(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def _load(path: str, permissive: bool) -> tuple[Graph, Gamble]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_instance(text, mode="permissive" if permissive else "strict")


def _solution_doc(g: Graph, gamble: Gamble, sol: Solution, algorithm: str, agreement):
    vertices = []
    for v in range(g.vertex_count):
        path = chase_path(g, sol, v)
        vertices.append(
            {
                "label": g.label_of(v),
                "p": float(gamble.p[v]),
                "time": _fmt(float(sol.times[v])),
                "next": g.label_of(sol.strategy.next[v]),
                "chase_path": [g.label_of(u) for u in path],
            }
        )
    doc = {
        "algorithm": algorithm,
        "iterations": sol.iterations,
        "max_residual": float(sol.max_residual),
        "vertices": vertices,
    }
    if agreement is not None:
        doc["agreement"] = agreement
    return doc


def _print_table(doc) -> None:
    print(f"algorithm: {doc['algorithm']}")
    print(f"iterations: {doc['iterations']}")
    print(f"max_residual: {doc['max_residual']!r}")
    if "agreement" in doc:
        print(f"agreement: {'true' if doc['agreement'] else 'false'}")
    rows = [
        (
            rec["label"],
            repr(rec["p"]),
            rec["time"] if isinstance(rec["time"], str) else repr(rec["time"]),
            rec["next"],
            " -> ".join(rec["chase_path"]),
        )
        for rec in doc["vertices"]
    ]
    header = ("vertex", "p", "T", "next", "chase_path")
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(5)]
    print("  ".join(header[i].ljust(widths[i]) for i in range(5)))
    for r in rows:
        print("  ".join(r[i].ljust(widths[i]) for i in range(5)))


def cmd_solve(args) -> int:
    g, gamble = _load(args.instance, args.permissive)
    agreement = None
    if args.algorithm == "iterative":
        sol = solve_iterative(g, gamble)
    elif args.algorithm == "priority":
        sol = solve_priority(g, gamble)
    else:
        sol = solve_iterative(g, gamble)
        other = solve_priority(g, gamble)
        agreement = times_close(sol.times, other.times)
    doc = _solution_doc(g, gamble, sol, args.algorithm, agreement)
    if args.format == "json":
        print(json.dumps(doc))
    else:
        _print_table(doc)
    if agreement is False:
        print("error: iterative and priority solvers disagree beyond 1e-9", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_check(args) -> int:
    g, gamble = _load(args.instance, args.permissive)
    size = strategy_space_size(g)
    oracle_times, _ = oracle_optimal(g, gamble, cap=args.cap)
    sol_i = solve_iterative(g, gamble)
    sol_p = solve_priority(g, gamble)
    checks = [
        ("iterative vs priority", times_close(sol_i.times, sol_p.times)),
        ("iterative vs oracle", times_close(sol_i.times, oracle_times)),
        ("priority vs oracle", times_close(sol_p.times, oracle_times)),
    ]
    print(f"strategies enumerated: {size}")
    for name, ok in checks:
        print(f"{name}: {'agree' if ok else 'DISAGREE'}")
    if all(ok for _, ok in checks):
        print("PASS")
        return EXIT_OK
    print("FAIL")
    return EXIT_DISAGREE


def cmd_simulate(args) -> int:
    g, gamble = _load(args.instance, args.permissive)
    if g.labels is not None and args.start in g.labels:
        start = g.labels.index(args.start)
    elif g.labels is None and args.start.isdigit() and int(args.start) < g.vertex_count:
        start = int(args.start)
    else:
        raise ValidationError(f"unknown start vertex {args.start!r}")
    if args.strategy == "solved":
        sol = solve_iterative(g, gamble)
        strategy = sol.strategy
        theoretical = float(sol.times[start])
    else:
        strategy = identity_strategy(g.vertex_count)
        evaluation = evaluate_stationary_strategy(g, gamble, strategy)
        theoretical = float(evaluation.times[start])
    report = simulate_chase(
        g, gamble, strategy, start, trials=args.trials, seed=args.seed,
        round_cap=args.round_cap,
    )
    if report.mean == theoretical:
        z = 0.0
    elif report.std_error > 0.0:
        z = (report.mean - theoretical) / report.std_error
    else:
        z = math.inf
    print(f"start: {g.label_of(start)}")
    print(f"strategy: {args.strategy}")
    print(f"trials: {report.trials}")
    print(f"mean: {_fmt_str(report.mean)}")
    print(f"std_error: {_fmt_str(report.std_error)}")
    print(f"truncated: {report.truncated}")
    print(f"theoretical: {_fmt_str(theoretical)}")
    print(f"z: {_fmt_str(z)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    config = BenchConfig(
        sizes=tuple(int(x) for x in args.sizes.split(",")),
        densities=tuple(args.densities.split(",")),
        gamble_modes=tuple(args.gamble_modes.split(",")),
        repetitions=args.reps,
        seed=args.seed,
        algorithms=("iterative", "priority") if args.algorithm == "both" else (args.algorithm,),
    )
    rows = run_benchmark(config)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_csv(rows, fh)
    print(f"wrote {len(rows)} rows to {args.out}")
    by_cell = {}
    for row in rows:
        by_cell.setdefault((row.n, row.m, row.gamble_mode), {})[row.algorithm] = row.wall_time_ns
    for (n, m, mode), cell in sorted(by_cell.items()):
        timing = "  ".join(f"{alg}={ns / 1e6:.2f}ms" for alg, ns in sorted(cell.items()))
        print(f"n={n} m={m} {mode}: {timing}")
    if any(row.agreement is False for row in rows):
        print("error: solver disagreement in sweep", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="copchase",
        description="Optimal cop strategies against a known gambler distribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file and print T, pi, chase paths")
    p_solve.add_argument("instance")
    p_solve.add_argument("--algorithm", choices=("iterative", "priority", "both"), default="both")
    p_solve.add_argument("--format", choices=("json", "table"), default="table")
    p_solve.add_argument("--permissive", action="store_true", help="allow gambles summing to < 1")
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="verify both solvers against the brute-force oracle")
    p_check.add_argument("instance")
    p_check.add_argument("--cap", type=int, default=ENUMERATION_CAP, help="max strategies to enumerate")
    p_check.add_argument("--permissive", action="store_true")
    p_check.set_defaults(func=cmd_check)

    p_sim = sub.add_parser("simulate", help="Monte Carlo check of an expected capture time")
    p_sim.add_argument("instance")
    p_sim.add_argument("--start", required=True, help="start vertex label")
    p_sim.add_argument("--trials", type=int, default=200000)
    p_sim.add_argument("--seed", type=int, default=42)
    p_sim.add_argument("--strategy", choices=("solved", "stay"), default="solved")
    p_sim.add_argument("--round-cap", type=int, default=10**7)
    p_sim.add_argument("--permissive", action="store_true")
    p_sim.set_defaults(func=cmd_simulate)

    p_bench = sub.add_parser("bench", help="run the timing sweep and write a CSV")
    p_bench.add_argument("--sizes", default="100,500,1000")
    p_bench.add_argument(
        "--densities",
        default="4n,0.5",
        help="comma list: float = edge probability, int = edge count, '4n' = count scaled by n",
    )
    p_bench.add_argument("--gamble-modes", default="uniform,dirichlet")
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--algorithm", choices=("iterative", "priority", "both"), default="both")
    p_bench.add_argument("--out", default="bench.csv")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except SimulationUnsupportedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
