"""Command-line interface: solve single instances, generate random
benchmark sets, and run batch gap evaluations.

Solver flag defaults reproduce the reference configuration (100 ants, 100
iterations, alpha = beta = 1, rho = 0.1, p_g = 0.01, mne = 8, candidate
list 20, backup list 64), so a bare `solve` runs the standard setup.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from .errors import SolverError
from .instance import (
    EUCLID_REAL,
    EUCLID_ROUNDED,
    Instance,
    dump_text,
    gap_percent,
    generate_random,
    load_instance,
)
from .solver import RunResult, SolverConfig, solve


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ants", type=int, default=100)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=0.1)
    p.add_argument("--pg", type=float, default=0.01)
    p.add_argument("--mne", type=int, default=8)
    p.add_argument("--cand", type=int, default=20)
    p.add_argument("--backup", type=int, default=64)
    p.add_argument("--pbest", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--serial", action="store_true",
                   help="run ants serially instead of in parallel")
    p.add_argument("--heuristic", default="inverse", metavar="inverse|FILE",
                   help="prior source: 'inverse' for 1/d, or a HEUR v1 file")


def _config_from_args(args, seed: int | None = None) -> SolverConfig:
    return SolverConfig(
        ants=args.ants,
        iterations=args.iters,
        alpha=args.alpha,
        beta=args.beta,
        rho=args.rho,
        p_g=args.pg,
        mne=args.mne,
        k=args.cand,
        bkp=args.backup,
        p_best=args.pbest,
        seed=args.seed if seed is None else seed,
        heuristic_file=None if args.heuristic == "inverse" else args.heuristic,
        parallel=not args.serial,
    )


def _apply_metric(instance: Instance, metric: str | None) -> Instance:
    if metric is None:
        return instance
    target = EUCLID_REAL if metric == "real" else EUCLID_ROUNDED
    if target == instance.edge_metric:
        return instance
    return Instance(name=instance.name, coords=instance.coords, edge_metric=target)


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    instance = _apply_metric(instance, args.metric)
    result = solve(instance, _config_from_args(args))
    print(f"instance  {instance.name}  n={instance.n}  metric={instance.edge_metric}")
    print(f"best cost {result.best_cost!r}")
    if args.optimal is not None:
        print(f"gap       {gap_percent(result.best_cost, args.optimal):.4f}%")
    print(f"time      {result.wall_time:.3f}s")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(result.trace_rows()) + "\n")
    return 0


def cmd_gen(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        instance = generate_random(args.n, seed)
        path = os.path.join(args.out, f"{instance.name}.tsp")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_text(instance))
    print(f"wrote {args.count} instances of size {args.n} to {args.out}")
    return 0


def _read_optima(path: str) -> dict[str, float]:
    optima: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() == "name":
                continue
            optima[row[0].strip()] = float(row[1])
    return optima


def cmd_bench(args) -> int:
    names = sorted(
        f for f in os.listdir(args.dir) if f.endswith((".tsp", ".txt"))
    )
    if not names:
        print(f"no instances found in {args.dir}", file=sys.stderr)
        return 2
    optima = _read_optima(args.optima) if args.optima else {}
    rows = []
    for fname in names:
        instance = load_instance(os.path.join(args.dir, fname))
        instance = _apply_metric(instance, args.metric)
        costs, times = [], []
        for run in range(args.runs):
            t0 = time.perf_counter()
            result: RunResult = solve(instance, _config_from_args(args, seed=run))
            times.append(time.perf_counter() - t0)
            costs.append(result.best_cost)
        mean_cost = sum(costs) / len(costs)
        mean_time = sum(times) / len(times)
        optimal = optima.get(instance.name)
        gap = gap_percent(mean_cost, optimal) if optimal else None
        rows.append((instance.name, instance.n, mean_cost, optimal, gap, mean_time))
    name_w = max(len(r[0]) for r in rows) + 2
    print(f"{'name':<{name_w}}{'n':>6}{'cost':>14}{'optimal':>12}{'gap%':>9}{'time':>9}")
    for name, n, cost, optimal, gap, t in rows:
        opt_s = f"{optimal:.2f}" if optimal is not None else "-"
        gap_s = f"{gap:.3f}" if gap is not None else "-"
        print(f"{name:<{name_w}}{n:>6}{cost:>14.4f}{opt_s:>12}{gap_s:>9}{t:>9.2f}")
    gaps = [g for *_, g, _t in rows if g is not None]
    mean_time = sum(r[5] for r in rows) / len(rows)
    summary = f"mean time {mean_time:.2f}s over {len(rows)} instances x {args.runs} runs"
    if gaps:
        summary = f"mean gap {sum(gaps) / len(gaps):.3f}%  " + summary
    print(summary)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["name", "n", "cost", "optimal", "gap", "time"])
            for name, n, cost, optimal, gap, t in rows:
                writer.writerow([name, n, repr(cost), optimal, gap, f"{t:.4f}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="focusedaco",
        description="Focused ant colony optimization for the TSP",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance")
    p_solve.add_argument("--instance", required=True, help="TSPLIB or dump file")
    p_solve.add_argument("--optimal", type=float, default=None,
                         help="known optimum, enables gap output")
    p_solve.add_argument("--trace", default=None, help="write per-iteration CSV here")
    p_solve.add_argument("--metric", choices=("real", "rounded"), default=None)
    _add_solver_flags(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_gen = sub.add_parser("gen", help="generate random instances")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--count", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="batch-evaluate a directory of instances")
    p_bench.add_argument("--dir", required=True)
    p_bench.add_argument("--optima", default=None, help="CSV of name,optimal rows")
    p_bench.add_argument("--runs", type=int, default=10)
    p_bench.add_argument("--csv", default=None, help="also write the report as CSV")
    p_bench.add_argument("--metric", choices=("real", "rounded"), default=None)
    _add_solver_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SolverError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
