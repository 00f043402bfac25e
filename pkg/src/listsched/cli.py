"""Command-line interface: generate, schedule, validate, benchmark, analyze.

Exit codes: 0 on success, 1 on domain errors (invalid schedule, unknown
scheduler name, malformed inputs), 2 on usage or IO errors.  All
randomness enters through explicit --seed flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, datagen, model, scheduler

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="listsched",
        description="Parametric list scheduling for heterogeneous task graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a dataset of random instances")
    p.add_argument("--kind", required=True, choices=[k.value for k in datagen.GraphKind])
    p.add_argument("--ccr", type=_positive_float, default=1.0,
                   help="target communication-to-computation ratio (default 1)")
    p.add_argument("--count", type=_positive_int, default=100,
                   help="number of instances (default 100)")
    p.add_argument("--seed", type=_seed, default=0, help="dataset seed (default 0)")
    p.add_argument("--out", required=True, help="output dataset directory")

    p = sub.add_parser("schedule", help="schedule one instance with one scheduler")
    p.add_argument("--instance", required=True)
    p.add_argument("--scheduler", required=True,
                   help="canonical name or alias (see list-schedulers)")
    p.add_argument("--out", required=True, help="output schedule JSON")

    p = sub.add_parser("validate", help="check a schedule against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule", required=True)

    p = sub.add_parser("benchmark", help="run schedulers over datasets")
    p.add_argument("--datasets", required=True, nargs="+",
                   help="one or more dataset directories")
    p.add_argument("--schedulers", default="all",
                   help="'all' or a comma-separated list of names (default all)")
    p.add_argument("--repeats", type=_positive_int, default=3,
                   help="timed runs per record; the median is kept (default 3)")
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="worker processes for the untimed pass (default 1)")
    p.add_argument("--out", required=True, help="output results CSV")

    p = sub.add_parser("analyze", help="derive tables from a results CSV")
    p.add_argument("--results", required=True)
    p.add_argument("--mode", required=True,
                   choices=["ratios", "pareto", "effects", "interactions"])
    p.add_argument("--params", default=None,
                   help="two comma-separated parameters for --mode interactions "
                        "(e.g. compare,ccr)")
    p.add_argument("--out", required=True)

    sub.add_parser("list-schedulers", help="print the 72 scheduler names")
    return parser


def cmd_generate(args: argparse.Namespace) -> int:
    params = datagen.GenParams(
        kind=datagen.GraphKind(args.kind),
        seed=args.seed,
        count=args.count,
        target_ccr=args.ccr,
    )
    dataset = datagen.gen_dataset(params)
    datagen.save_dataset(dataset, params, args.out)
    print(f"wrote {params.count} instances to {args.out} ({dataset.name})")
    return EXIT_OK


def cmd_schedule(args: argparse.Namespace) -> int:
    try:
        config = scheduler.config_by_name(args.scheduler)
    except KeyError:
        names = [name for name, _ in scheduler.enumerate_configs()]
        print(f"unknown scheduler {args.scheduler!r}; valid names:", file=sys.stderr)
        for name in names:
            print(f"  {name}", file=sys.stderr)
        print(f"aliases: {', '.join(sorted(scheduler.ALIASES))}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        instance = model.load_instance(args.instance)
    except (ValueError, KeyError) as exc:
        print(f"invalid instance file: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    result = scheduler.schedule(instance, config)
    model.save_schedule(result, args.out)
    print(repr(model.makespan(result)))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        instance = model.load_instance(args.instance)
        sched = model.load_schedule(args.schedule)
        violations = model.validate_schedule(instance, sched)
    except (ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    for violation in violations:
        print(f"{violation.kind.value}: {violation.detail}")
    if violations:
        print(f"{len(violations)} violation(s)")
        return EXIT_DOMAIN
    print("schedule is valid")
    return EXIT_OK


def _resolve_schedulers(spec: str) -> list[tuple[str, scheduler.SchedulerConfig]]:
    if spec == "all":
        return scheduler.enumerate_configs()
    configs = []
    for raw in spec.split(","):
        name = raw.strip()
        config = scheduler.config_by_name(name)  # KeyError on unknown
        configs.append((name, config))
    return configs


def cmd_benchmark(args: argparse.Namespace) -> int:
    try:
        configs = _resolve_schedulers(args.schedulers)
    except KeyError as exc:
        print(f"{exc.args[0]}; run list-schedulers for valid names", file=sys.stderr)
        return EXIT_DOMAIN
    datasets = []
    for dir_path in args.datasets:
        if not Path(dir_path, "manifest.json").is_file():
            print(f"not a dataset directory: {dir_path}", file=sys.stderr)
            return EXIT_USAGE
        datasets.append(datagen.load_dataset(dir_path))
    records = bench.run_benchmark(
        datasets, configs, timing_repeats=args.repeats, jobs=args.jobs
    )
    try:
        ratios = bench.compute_ratios(records)
    except ValueError as exc:
        print(f"cannot normalize results: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    bench.write_results_csv(args.out, records, ratios)
    failures = sum(1 for r in records if r.error is not None)
    print(f"wrote {len(records)} records to {args.out}"
          + (f" ({failures} failures)" if failures else ""))
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        records = bench.read_results_csv(args.results)
    except (OSError, KeyError, ValueError) as exc:
        print(f"cannot read results: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        ratios = bench.compute_ratios(records)
        if args.mode == "ratios":
            bench.write_results_csv(args.out, records, ratios)
        elif args.mode == "pareto":
            points = bench.pareto_front(bench.mean_ratio_points(ratios))
            bench.write_pareto_csv(args.out, points)
            svg_path = Path(args.out).with_suffix(".svg")
            svg_path.write_text(bench.pareto_svg(points))
            print(f"wrote {svg_path}")
        elif args.mode == "effects":
            bench.write_effects_csv(args.out, bench.component_effects(ratios))
        elif args.mode == "interactions":
            if not args.params or len(args.params.split(",")) != 2:
                print("--mode interactions requires --params A,B", file=sys.stderr)
                return EXIT_USAGE
            param_a, param_b = (p.strip() for p in args.params.split(","))
            cells = bench.interaction_effects(ratios, param_a, param_b)
            bench.write_interactions_csv(args.out, cells)
    except ValueError as exc:
        print(f"analysis failed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_list_schedulers() -> int:
    for name, config in scheduler.enumerate_configs():
        alias = scheduler.alias_of(config)
        print(f"{name} (alias: {alias})" if alias else name)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "schedule":
            return cmd_schedule(args)
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "benchmark":
            return cmd_benchmark(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "list-schedulers":
            return cmd_list_schedulers()
        raise AssertionError(f"unhandled command {args.command!r}")
    except OSError as exc:
        print(f"IO error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
