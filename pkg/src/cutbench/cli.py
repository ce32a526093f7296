"""Command-line interface: generate, solve, benchmark, tune, train, report."""

from __future__ import annotations

import argparse
import glob
import sys
from pathlib import Path

import numpy as np

from . import results as results_mod
from .evaluation import (
    ProtocolConfig,
    bench_solver,
    benchmark,
    softtabu_bench_solver,
    update_registry_from_report,
)
from .generators import FAMILIES, WEIGHT_SCHEMES, DistributionSpec, generate_batch
from .graph import brute_force_optimum
from .gset import read_gset_file, write_gset_file
from .registry import BestKnownRegistry, load_registry, save_registry
from .softtabu import TrainConfig, load_policy, save_policy, softtabu_solve, train
from .solvers import SolverConfig, solve
from .tuning import GridSpec, grid_search, tuning_table_csv

CLI_SOLVERS = ("fg", "rg", "tabu", "eo", "softtabu")


def _add_protocol_args(parser):
    parser.add_argument("--episodes", type=int, default=50)
    parser.add_argument("--steps-factor", type=float, default=2.0)
    parser.add_argument("--base-seed", type=int, default=0)
    parser.add_argument("--time-limit", type=float, default=None)


def _add_family_args(parser):
    parser.add_argument("--family", required=True, choices=FAMILIES)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--n-min", type=int, default=None)
    parser.add_argument("--n-max", type=int, default=None)
    parser.add_argument("--p", type=float, default=None, help="edge/rewire probability")
    parser.add_argument("--m", type=int, default=None, help="attachments per arriving vertex")
    parser.add_argument("--k", type=int, default=None, help="ring-lattice mean degree")
    parser.add_argument("--d", type=float, default=None, help="skew density")
    parser.add_argument("--weights", choices=WEIGHT_SCHEMES, default="unweighted01")


def _spec_from_args(args, seed: int) -> DistributionSpec:
    params = {}
    for key in ("p", "m", "k", "d"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    n_range = None
    if args.n_min is not None or args.n_max is not None:
        if args.n_min is None or args.n_max is None:
            raise ValueError("--n-min and --n-max must be given together")
        n_range = (args.n_min, args.n_max)
    return DistributionSpec(
        family=args.family,
        n=args.n,
        n_range=n_range,
        params=params,
        weight_scheme=args.weights,
        seed=seed,
    )


def _protocol_from_args(args) -> ProtocolConfig:
    return ProtocolConfig(
        episodes=args.episodes,
        steps_factor=args.steps_factor,
        time_limit=args.time_limit,
        base_seed=args.base_seed,
    )


def _load_instances(pattern: str):
    paths = sorted(glob.glob(pattern))
    if not paths:
        raise ValueError(f"no instance files match {pattern!r}")
    return [read_gset_file(p) for p in paths]


def _make_bench_solvers(names, args):
    solvers = []
    for name in names:
        if name not in CLI_SOLVERS:
            raise ValueError(f"unknown solver {name!r}; expected one of {CLI_SOLVERS}")
        if name == "softtabu":
            if not args.policy:
                raise ValueError("--policy is required for the softtabu solver")
            policy = load_policy(args.policy)
            solvers.append(
                softtabu_bench_solver(policy, train_distribution=policy.metadata.get("trained_on"))
            )
        else:
            solvers.append(
                bench_solver(SolverConfig(name, tenure=args.tenure, tau=args.tau))
            )
    return solvers


def cmd_generate(args) -> int:
    spec = _spec_from_args(args, seed=args.seed)
    graphs = generate_batch(spec, args.count, base_seed=args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for g in graphs:
        path = out_dir / f"{g.name}.txt"
        write_gset_file(g, path)
        print(path)
    return 0


def cmd_solve(args) -> int:
    graph = read_gset_file(args.instance)
    steps = int(round(args.steps_factor * graph.n))
    if args.solver == "softtabu":
        if not args.policy:
            raise ValueError("--policy is required for the softtabu solver")
        policy = load_policy(args.policy)
        outcome = softtabu_solve(policy, graph, args.episodes, steps, args.seed)
    elif args.solver == "fg":
        outcome = solve(graph, SolverConfig("fg"))
    else:
        best = None
        for i in range(args.episodes):
            out = solve(graph, SolverConfig(
                args.solver, tenure=args.tenure, tau=args.tau, max_steps=steps, seed=args.seed + i
            ))
            if best is None or out.best_value > best.best_value:
                best = out
        outcome = best
    assignment_path = Path(args.assignment_out or f"{args.instance}.assignment")
    assignment_path.write_text("".join(str(int(b)) for b in outcome.best_side) + "\n")
    print(outcome.best_value)
    return 0


def cmd_benchmark(args) -> int:
    instances = _load_instances(args.instances)
    solver_names = [s.strip() for s in args.solvers.split(",") if s.strip()]
    solvers = _make_bench_solvers(solver_names, args)
    registry = load_registry(args.registry) if args.registry and Path(args.registry).exists() else BestKnownRegistry()
    protocol = _protocol_from_args(args)
    report = benchmark(solvers, instances, protocol, registry, distribution=args.distribution)
    doc = results_mod.report_to_document(report)
    results_mod.save_results(doc, args.out)
    print(args.out)
    if args.update_registry:
        if not args.registry:
            raise ValueError("--update-registry needs --registry")
        update_registry_from_report(registry, report)
        save_registry(registry, args.registry)
    return 0


def cmd_tune(args) -> int:
    try:
        start, stop, step = (float(x) for x in args.grid.split(":"))
    except ValueError:
        raise ValueError(f"--grid must be start:stop:step, got {args.grid!r}") from None
    parameter = "tenure" if args.solver == "tabu" else "tau"
    grid = GridSpec(parameter, start, stop, step)
    validation = _load_instances(args.validation)
    best, table = grid_search(args.solver, grid, validation, _protocol_from_args(args))
    csv = tuning_table_csv(table)
    if args.out:
        Path(args.out).write_text(csv)
    else:
        sys.stdout.write(csv)
    print(f"best {parameter}: {best:g}")
    return 0


def cmd_train_softtabu(args) -> int:
    spec = _spec_from_args(args, seed=args.seed)
    config = TrainConfig(
        episodes=args.train_episodes,
        steps_per_episode=args.steps_per_episode,
        learning_rate=args.learning_rate,
        discount=args.discount,
        seed=args.seed,
        validation_count=args.validation_count,
        validation_interval=args.validation_interval,
    )
    policy = train(spec, config)
    save_policy(policy, args.out)
    print(args.out)
    return 0


def cmd_oracle(args) -> int:
    graph = read_gset_file(args.instance)
    value, _ = brute_force_optimum(graph)
    print(value)
    return 0


def cmd_report(args) -> int:
    doc = results_mod.load_results(args.results)
    text = results_mod.report_csv(doc) if args.format == "csv" else results_mod.report_markdown(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutbench", description="MaxCut heuristics and benchmark harness"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write instance files for a distribution")
    _add_family_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="run one solver on one instance")
    p.add_argument("--solver", required=True, choices=CLI_SOLVERS)
    p.add_argument("--instance", required=True)
    p.add_argument("--episodes", type=int, default=50)
    p.add_argument("--steps-factor", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tenure", type=int, default=20)
    p.add_argument("--tau", type=float, default=1.4)
    p.add_argument("--policy", default=None)
    p.add_argument("--assignment-out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("benchmark", help="run solvers over instances, write results.json")
    p.add_argument("--solvers", required=True, help="comma-separated solver names")
    p.add_argument("--instances", required=True, help="glob of instance files")
    p.add_argument("--registry", default=None)
    p.add_argument("--update-registry", action="store_true")
    p.add_argument("--distribution", default="default")
    p.add_argument("--tenure", type=int, default=20)
    p.add_argument("--tau", type=float, default=1.4)
    p.add_argument("--policy", default=None)
    p.add_argument("--out", required=True)
    _add_protocol_args(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("tune", help="grid search a solver parameter")
    p.add_argument("--solver", required=True, choices=("tabu", "eo"))
    p.add_argument("--grid", required=True, help="start:stop:step")
    p.add_argument("--validation", required=True, help="glob of validation instances")
    p.add_argument("--out", default=None)
    _add_protocol_args(p)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("train-softtabu", help="train the linear agent on a distribution")
    _add_family_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-episodes", type=int, default=500)
    p.add_argument("--steps-per-episode", type=int, default=None)
    p.add_argument("--learning-rate", type=float, default=1e-3)
    p.add_argument("--discount", type=float, default=0.95)
    p.add_argument("--validation-count", type=int, default=50)
    p.add_argument("--validation-interval", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_softtabu)

    p = sub.add_parser("oracle", help="exact optimum by enumeration (n <= 24)")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("report", help="tables from a results.json")
    p.add_argument("--results", required=True)
    p.add_argument("--format", choices=("csv", "md"), default="md")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
