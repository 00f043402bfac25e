"""Benchmark harness: ratios, pareto fronts, component effects, oracle.

Every scheduler is run on every instance of every dataset.  Makespans are
deterministic and recorded from a single run; wall-clock runtimes are the
median of repeated timed runs on a monotonic clock and should be read as
estimates.  Ratios normalize each value by the per-instance minimum over
the schedulers benchmarked together, so 1.0 marks the best scheduler on
that instance and every ratio is at least 1.

The brute-force oracle enumerates all task-to-node assignments and all
topological orders for tiny instances, timing each task at its earliest
insertion window; it bounds from below what any scheduler in the
parametric family can achieve.
"""

from __future__ import annotations

import csv
import itertools
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .datagen import Dataset
from .model import (
    NodeId,
    ProblemInstance,
    TaskId,
    makespan,
    topological_order,
)
from .priority import PriorityKind
from .scheduler import SchedulerConfig, config_by_name, schedule
from .selection import CompareKind, _insertion_window

RESULTS_HEADER = [
    "dataset",
    "instance",
    "scheduler",
    "makespan",
    "runtime_seconds",
    "makespan_ratio",
    "runtime_ratio",
    "error",
]

#: The five configuration parameters, with their level values in report order.
CONFIG_PARAMETERS: dict[str, tuple[str, ...]] = {
    "initial_priority": tuple(k.value for k in PriorityKind),
    "compare": tuple(k.value for k in CompareKind),
    "append_only": ("False", "True"),
    "critical_path": ("False", "True"),
    "sufferage": ("False", "True"),
}

#: Extra grouping keys derived from dataset names like "in_trees_ccr_0.2".
DERIVED_PARAMETERS = ("dataset_type", "ccr")


@dataclass(frozen=True)
class BenchmarkRecord:
    dataset: str
    instance_index: int
    scheduler: str
    makespan: float
    runtime_seconds: float
    error: str | None = None


@dataclass(frozen=True)
class RatioRow:
    dataset: str
    instance_index: int
    scheduler: str
    makespan_ratio: float
    runtime_ratio: float


@dataclass(frozen=True)
class ParetoPoint:
    scheduler: str
    mean_makespan_ratio: float
    mean_runtime_ratio: float
    pareto_optimal: bool


@dataclass(frozen=True)
class EffectRow:
    parameter: str
    level: str
    mean_makespan_ratio: float
    mean_runtime_ratio: float


@dataclass(frozen=True)
class InteractionCell:
    parameter_a: str
    level_a: str
    parameter_b: str
    level_b: str
    mean_makespan_ratio: float
    mean_runtime_ratio: float


def _time_one(instance: ProblemInstance, config: SchedulerConfig) -> float:
    t0 = time.perf_counter()
    schedule(instance, config)
    return time.perf_counter() - t0


def _makespan_of(
    args: tuple[ProblemInstance, SchedulerConfig]
) -> tuple[float | None, str | None]:
    instance, config = args
    try:
        return makespan(schedule(instance, config)), None
    except Exception as exc:  # record the failure; the sweep continues
        return None, f"{type(exc).__name__}: {exc}"


def run_benchmark(
    datasets: Sequence[Dataset],
    configs: Sequence[tuple[str, SchedulerConfig]],
    timing_repeats: int = 3,
    jobs: int = 1,
) -> list[BenchmarkRecord]:
    """One record per (dataset, instance, scheduler).

    Makespans come from an untimed pass that may run across ``jobs``
    worker processes; the timed pass always runs serially afterwards so
    timings are not polluted by concurrent work.  A scheduler failure on
    one instance produces a record carrying the error message and NaN
    values instead of aborting the run.
    """
    if not datasets:
        raise ValueError("no datasets to benchmark")
    if not configs:
        raise ValueError("no scheduler configurations to benchmark")
    if timing_repeats < 1:
        raise ValueError("timing_repeats must be at least 1")

    work = [
        (ds.name, idx, name, config, instance)
        for ds in datasets
        for idx, instance in enumerate(ds.instances)
        for name, config in configs
    ]

    makespans: list[float | None] = []
    errors: list[str | None] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for value, err in pool.map(
                _makespan_of, ((inst, cfg) for _, _, _, cfg, inst in work), chunksize=16
            ):
                makespans.append(value)
                errors.append(err)
    else:
        for _, _, _, config, instance in work:
            value, err = _makespan_of((instance, config))
            makespans.append(value)
            errors.append(err)

    records = []
    for (ds_name, idx, name, config, instance), ms, err in zip(work, makespans, errors):
        if err is not None:
            records.append(
                BenchmarkRecord(ds_name, idx, name, math.nan, math.nan, error=err)
            )
            continue
        runtime = statistics.median(
            _time_one(instance, config) for _ in range(timing_repeats)
        )
        records.append(BenchmarkRecord(ds_name, idx, name, ms, runtime))
    return records


def compute_ratios(records: Iterable[BenchmarkRecord]) -> list[RatioRow]:
    """Normalize makespan and runtime by the per-(dataset, instance) minimum."""
    groups: dict[tuple[str, int], list[BenchmarkRecord]] = {}
    for record in records:
        groups.setdefault((record.dataset, record.instance_index), []).append(record)

    rows: list[RatioRow] = []
    for key in groups:
        ok = [r for r in groups[key] if r.error is None]
        if not ok:
            raise ValueError(f"no successful records for {key}; cannot normalize")
        min_makespan = min(r.makespan for r in ok)
        min_runtime = min(r.runtime_seconds for r in ok)
        if min_makespan == 0:
            raise ValueError(f"degenerate instance {key}: minimum makespan is 0")
        for r in ok:
            rows.append(
                RatioRow(
                    dataset=r.dataset,
                    instance_index=r.instance_index,
                    scheduler=r.scheduler,
                    makespan_ratio=r.makespan / min_makespan,
                    runtime_ratio=r.runtime_seconds / min_runtime,
                )
            )
    return rows


def mean_ratio_points(rows: Iterable[RatioRow]) -> list[tuple[str, float, float]]:
    """Per-scheduler means of both ratios, sorted by scheduler name."""
    sums: dict[str, list[float]] = {}
    for row in rows:
        acc = sums.setdefault(row.scheduler, [0.0, 0.0, 0.0])
        acc[0] += row.makespan_ratio
        acc[1] += row.runtime_ratio
        acc[2] += 1
    return [
        (name, acc[0] / acc[2], acc[1] / acc[2]) for name, acc in sorted(sums.items())
    ]


def pareto_front(points: Sequence[tuple[str, float, float]]) -> list[ParetoPoint]:
    """Mark each (scheduler, mean makespan ratio, mean runtime ratio) point.

    A point is pareto-optimal unless some other point is strictly lower in
    both coordinates; ties and duplicates therefore never dominate.  The
    sweep is O(n log n): after sorting by makespan ratio, a point is
    dominated exactly when the smallest runtime ratio among strictly
    better makespan ratios beats its own.
    """
    n = len(points)
    optimal = [True] * n
    order = sorted(range(n), key=lambda i: (points[i][1], points[i][2]))
    best_runtime = math.inf
    i = 0
    while i < n:
        j = i
        while j < n and points[order[j]][1] == points[order[i]][1]:
            j += 1
        for k in order[i:j]:
            if best_runtime < points[k][2]:
                optimal[k] = False
        for k in order[i:j]:
            best_runtime = min(best_runtime, points[k][2])
        i = j
    return [
        ParetoPoint(name, mr, rr, optimal[i])
        for i, (name, mr, rr) in enumerate(points)
    ]


def _config_of(scheduler_name: str, configs: Mapping[str, SchedulerConfig] | None) -> SchedulerConfig:
    if configs is not None and scheduler_name in configs:
        return configs[scheduler_name]
    return config_by_name(scheduler_name)


def _level_of(
    row: RatioRow, parameter: str, configs: Mapping[str, SchedulerConfig] | None
) -> str:
    if parameter in CONFIG_PARAMETERS:
        config = _config_of(row.scheduler, configs)
        value = getattr(config, parameter)
        return value.value if hasattr(value, "value") else str(value)
    if parameter in DERIVED_PARAMETERS:
        if "_ccr_" not in row.dataset:
            raise ValueError(
                f"dataset name {row.dataset!r} does not encode a CCR; "
                f"cannot derive {parameter!r}"
            )
        kind, _, ccr = row.dataset.partition("_ccr_")
        return kind if parameter == "dataset_type" else ccr
    raise ValueError(f"unknown parameter {parameter!r}")


def _require_full_cross_product(
    rows: Sequence[RatioRow], configs: Mapping[str, SchedulerConfig] | None
) -> None:
    from .scheduler import enumerate_configs

    all_configs = {config for _, config in enumerate_configs()}
    seen: dict[tuple[str, int], set[SchedulerConfig]] = {}
    for row in rows:
        key = (row.dataset, row.instance_index)
        seen.setdefault(key, set()).add(_config_of(row.scheduler, configs))
    for key, group in seen.items():
        if group != all_configs:
            raise ValueError(
                f"instance {key} covers {len(group)} of {len(all_configs)} "
                "configurations; component means over an incomplete cross "
                "product would be confounded"
            )


def _levels_for(
    parameter: str, rows: Sequence[RatioRow], configs: Mapping[str, SchedulerConfig] | None
) -> list[str]:
    if parameter in CONFIG_PARAMETERS:
        return list(CONFIG_PARAMETERS[parameter])
    observed = {_level_of(row, parameter, configs) for row in rows}
    if parameter == "ccr":
        return sorted(observed, key=float)
    return sorted(observed)


def component_effects(
    rows: Sequence[RatioRow],
    configs: Mapping[str, SchedulerConfig] | None = None,
) -> list[EffectRow]:
    """Mean ratios per configuration-parameter level over the full design.

    Requires every (dataset, instance) group to cover all 72
    configurations; with the balanced design, each level mean aggregates
    the same number of rows and the parameter means share the grand mean.
    """
    _require_full_cross_product(rows, configs)
    out: list[EffectRow] = []
    for parameter, levels in CONFIG_PARAMETERS.items():
        sums = {level: [0.0, 0.0, 0] for level in levels}
        for row in rows:
            acc = sums[_level_of(row, parameter, configs)]
            acc[0] += row.makespan_ratio
            acc[1] += row.runtime_ratio
            acc[2] += 1
        for level in levels:
            mr_sum, rr_sum, count = sums[level]
            out.append(EffectRow(parameter, level, mr_sum / count, rr_sum / count))
    return out


def interaction_effects(
    rows: Sequence[RatioRow],
    parameter_a: str,
    parameter_b: str,
    configs: Mapping[str, SchedulerConfig] | None = None,
) -> list[InteractionCell]:
    """Cell means of both ratios for every (level_a, level_b) pair.

    ``parameter_b`` may also be ``dataset_type`` or ``ccr``, derived from
    the dataset naming convention.
    """
    if parameter_a == parameter_b:
        raise ValueError("interaction parameters must differ")
    _require_full_cross_product(rows, configs)
    levels_a = _levels_for(parameter_a, rows, configs)
    levels_b = _levels_for(parameter_b, rows, configs)
    sums = {
        (a, b): [0.0, 0.0, 0] for a in levels_a for b in levels_b
    }
    for row in rows:
        key = (_level_of(row, parameter_a, configs), _level_of(row, parameter_b, configs))
        acc = sums[key]
        acc[0] += row.makespan_ratio
        acc[1] += row.runtime_ratio
        acc[2] += 1
    cells = []
    for a in levels_a:
        for b in levels_b:
            mr_sum, rr_sum, count = sums[(a, b)]
            if count == 0:
                continue  # level pair absent (e.g. a dataset type missing a CCR)
            cells.append(
                InteractionCell(parameter_a, a, parameter_b, b, mr_sum / count, rr_sum / count)
            )
    return cells


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

MAX_ORACLE_TASKS = 8
MAX_ORACLE_NODES = 3


def _topological_orders(
    succs: Mapping[TaskId, Sequence[TaskId]], indeg: dict[TaskId, int]
) -> Iterable[tuple[TaskId, ...]]:
    ready = sorted(t for t, d in indeg.items() if d == 0)
    if not ready and indeg:
        return
    if not indeg:
        yield ()
        return
    for t in ready:
        rest = dict(indeg)
        del rest[t]
        for s in succs[t]:
            rest[s] -= 1
        for tail in _topological_orders(succs, rest):
            yield (t, *tail)


def brute_force_min_makespan(instance: ProblemInstance) -> float:
    """Exhaustive minimum makespan over the list-schedule family.

    Enumerates every task-to-node assignment crossed with every
    topological order, placing each task in its earliest insertion window
    on its assigned node.  Guarded to at most 8 tasks and 3 nodes.
    """
    tg = instance.task_graph
    nodes = instance.network.node_order()
    if len(tg.tasks) > MAX_ORACLE_TASKS or len(nodes) > MAX_ORACLE_NODES:
        raise ValueError(
            f"instance too large for brute force: {len(tg.tasks)} tasks, "
            f"{len(nodes)} nodes"
        )
    if not tg.tasks:
        return 0.0

    network = instance.network
    cost = tg.compute_cost
    sizes = tg.data_size
    strength = {}
    for u in nodes:
        for v in nodes:
            if u != v:
                strength[(u, v)] = network.link_strength(u, v)
    durations = {
        (t, v): cost[t] / network.speed[v] for t in tg.tasks for v in nodes
    }

    indeg = {t: len(tg.predecessors(t)) for t in tg.tasks}
    orders = list(_topological_orders(tg._succs, indeg))

    best = math.inf
    n_tasks = len(topological_order(tg))
    for assignment in itertools.product(nodes, repeat=n_tasks):
        for order in orders:
            node_of = dict(zip(order, assignment))
            placed: dict[TaskId, float] = {}
            timelines: dict[NodeId, list] = {v: [] for v in nodes}
            peak = 0.0
            for t in order:
                v = node_of[t]
                ready = 0.0
                for p in tg.predecessors(t):
                    p_end = placed[p]
                    arrival = (
                        p_end
                        if node_of[p] == v
                        else p_end + sizes[(p, t)] / strength[(node_of[p], v)]
                    )
                    if arrival > ready:
                        ready = arrival
                window = _insertion_window(timelines[v], ready, durations[(t, v)])
                _insert_interval(timelines[v], window.start, window.end, t)
                placed[t] = window.end
                if window.end > peak:
                    peak = window.end
                    if peak >= best:
                        break
            else:
                best = peak
    return best


class _Interval:
    __slots__ = ("start", "end", "task")

    def __init__(self, start: float, end: float, task: TaskId):
        self.start = start
        self.end = end
        self.task = task


def _insert_interval(timeline: list, start: float, end: float, task: TaskId) -> None:
    item = _Interval(start, end, task)
    lo, hi = 0, len(timeline)
    while lo < hi:
        mid = (lo + hi) // 2
        if timeline[mid].start < start:
            lo = mid + 1
        else:
            hi = mid
    timeline.insert(lo, item)


# ---------------------------------------------------------------------------
# CSV and SVG export
# ---------------------------------------------------------------------------


def write_results_csv(
    path: str | Path,
    records: Sequence[BenchmarkRecord],
    ratios: Sequence[RatioRow],
) -> None:
    by_key = {(r.dataset, r.instance_index, r.scheduler): r for r in ratios}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        for record in records:
            ratio = by_key.get((record.dataset, record.instance_index, record.scheduler))
            if record.error is not None:
                writer.writerow(
                    [record.dataset, record.instance_index, record.scheduler,
                     "", "", "", "", record.error]
                )
                continue
            writer.writerow(
                [
                    record.dataset,
                    record.instance_index,
                    record.scheduler,
                    repr(record.makespan),
                    repr(record.runtime_seconds),
                    repr(ratio.makespan_ratio) if ratio else "",
                    repr(ratio.runtime_ratio) if ratio else "",
                    "",
                ]
            )


def read_results_csv(path: str | Path) -> list[BenchmarkRecord]:
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            error = row.get("error") or None
            records.append(
                BenchmarkRecord(
                    dataset=row["dataset"],
                    instance_index=int(row["instance"]),
                    scheduler=row["scheduler"],
                    makespan=float(row["makespan"]) if row["makespan"] else math.nan,
                    runtime_seconds=(
                        float(row["runtime_seconds"]) if row["runtime_seconds"] else math.nan
                    ),
                    error=error,
                )
            )
    return records


def write_ratios_csv(path: str | Path, records: Sequence[BenchmarkRecord]) -> None:
    write_results_csv(path, records, compute_ratios(records))


def write_pareto_csv(path: str | Path, points: Sequence[ParetoPoint]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["scheduler", "mean_makespan_ratio", "mean_runtime_ratio", "pareto_optimal"]
        )
        for p in points:
            writer.writerow(
                [p.scheduler, repr(p.mean_makespan_ratio), repr(p.mean_runtime_ratio),
                 p.pareto_optimal]
            )


def write_effects_csv(path: str | Path, rows: Sequence[EffectRow]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["parameter", "level", "mean_makespan_ratio", "mean_runtime_ratio"])
        for row in rows:
            writer.writerow(
                [row.parameter, row.level, repr(row.mean_makespan_ratio),
                 repr(row.mean_runtime_ratio)]
            )


def write_interactions_csv(path: str | Path, cells: Sequence[InteractionCell]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["parameter_a", "level_a", "parameter_b", "level_b",
             "mean_makespan_ratio", "mean_runtime_ratio"]
        )
        for cell in cells:
            writer.writerow(
                [cell.parameter_a, cell.level_a, cell.parameter_b, cell.level_b,
                 repr(cell.mean_makespan_ratio), repr(cell.mean_runtime_ratio)]
            )


def pareto_svg(points: Sequence[ParetoPoint], width: int = 640, height: int = 480) -> str:
    """Standalone scatter of runtime ratio (x) vs makespan ratio (y)."""
    margin = 60
    xs = [p.mean_runtime_ratio for p in points] or [1.0]
    ys = [p.mean_makespan_ratio for p in points] or [1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def sx(x: float) -> float:
        return margin + (x - x_lo) / x_span * (width - 2 * margin)

    def sy(y: float) -> float:
        return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 15}" text-anchor="middle" '
        f'font-size="14">mean runtime ratio</text>',
        f'<text x="18" y="{height / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 18 {height / 2:.1f})">mean makespan ratio</text>',
    ]
    for i in range(5):
        x = x_lo + x_span * i / 4
        y = y_lo + y_span * i / 4
        parts.append(
            f'<text x="{sx(x):.1f}" y="{height - margin + 18}" text-anchor="middle" '
            f'font-size="11">{x:.3g}</text>'
        )
        parts.append(
            f'<text x="{margin - 8}" y="{sy(y) + 4:.1f}" text-anchor="end" '
            f'font-size="11">{y:.3g}</text>'
        )
    for p in sorted(points, key=lambda p: p.scheduler):
        color = "steelblue" if p.pareto_optimal else "lightcoral"
        cx, cy = sx(p.mean_runtime_ratio), sy(p.mean_makespan_ratio)
        parts.append(
            f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="4" fill="{color}">'
            f"<title>{p.scheduler}</title></circle>"
        )
        if p.pareto_optimal:
            parts.append(
                f'<text x="{cx + 6:.1f}" y="{cy - 6:.1f}" font-size="9">{p.scheduler}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
