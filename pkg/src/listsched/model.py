"""Core problem and solution types for heterogeneous DAG scheduling.

A problem instance pairs a weighted task DAG with a complete network of
compute nodes under the related-machines model: a node's single speed
scalar divides every task's compute cost, and a link's strength divides
every transferred data size.  Schedules are flat lists of
(task, node, start, end) entries; validity is checked after the fact by
:func:`validate_schedule` rather than enforced structurally.

Task and node identifiers are strings.  Their lexicographic order is the
tie-break order used everywhere downstream, so generators and loaders
should pick names that sort the way they want ties resolved.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

TaskId = str
NodeId = str

#: Relative tolerance for the entry-duration validity check.
DURATION_RTOL = 1e-9


def _check_positive(label: str, mapping: Mapping, keys: Iterable) -> None:
    for key in keys:
        if key not in mapping:
            raise ValueError(f"{label} missing for {key!r}")
        if not mapping[key] > 0:
            raise ValueError(f"{label} for {key!r} must be positive, got {mapping[key]!r}")


@dataclass(frozen=True, eq=True)
class TaskGraph:
    """Weighted DAG of tasks.

    ``compute_cost`` maps every task to its abstract work amount and
    ``data_size`` maps every dependency edge to the amount of data the
    successor needs from the predecessor.  Construction validates that the
    dependency relation is acyclic and that every weight is strictly
    positive; the deterministic topological order (Kahn's algorithm with
    the ready set kept sorted by task id) is computed once and cached.
    """

    tasks: frozenset[TaskId]
    deps: frozenset[tuple[TaskId, TaskId]]
    compute_cost: dict[TaskId, float]
    data_size: dict[tuple[TaskId, TaskId], float]
    _topo: tuple[TaskId, ...] = field(init=False, repr=False, compare=False)
    _succs: dict[TaskId, tuple[TaskId, ...]] = field(init=False, repr=False, compare=False)
    _preds: dict[TaskId, tuple[TaskId, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tasks", frozenset(self.tasks))
        object.__setattr__(self, "deps", frozenset((str(a), str(b)) for a, b in self.deps))
        object.__setattr__(self, "compute_cost", dict(self.compute_cost))
        object.__setattr__(self, "data_size", dict(self.data_size))

        for src, dst in self.deps:
            if src not in self.tasks or dst not in self.tasks:
                raise ValueError(f"dependency ({src!r}, {dst!r}) references unknown task")
            if src == dst:
                raise ValueError(f"self-dependency on task {src!r}")
        if set(self.compute_cost) != self.tasks:
            raise ValueError("compute_cost must be defined for exactly the task set")
        if set(self.data_size) != self.deps:
            raise ValueError("data_size must be defined for exactly the dependency set")
        _check_positive("compute_cost", self.compute_cost, self.tasks)
        _check_positive("data_size", self.data_size, self.deps)

        succs: dict[TaskId, list[TaskId]] = {t: [] for t in self.tasks}
        preds: dict[TaskId, list[TaskId]] = {t: [] for t in self.tasks}
        for src, dst in self.deps:
            succs[src].append(dst)
            preds[dst].append(src)
        object.__setattr__(self, "_succs", {t: tuple(sorted(s)) for t, s in succs.items()})
        object.__setattr__(self, "_preds", {t: tuple(sorted(p)) for t, p in preds.items()})
        object.__setattr__(self, "_topo", self._kahn_order())

    def _kahn_order(self) -> tuple[TaskId, ...]:
        import heapq

        indeg = {t: len(self._preds[t]) for t in self.tasks}
        ready = [t for t in self.tasks if indeg[t] == 0]
        heapq.heapify(ready)
        order: list[TaskId] = []
        while ready:
            t = heapq.heappop(ready)
            order.append(t)
            for s in self._succs[t]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    heapq.heappush(ready, s)
        if len(order) != len(self.tasks):
            raise ValueError("task graph contains a cycle")
        return tuple(order)

    @classmethod
    def from_costs(
        cls,
        compute_cost: Mapping[TaskId, float],
        data_size: Mapping[tuple[TaskId, TaskId], float],
    ) -> "TaskGraph":
        """Build a graph whose tasks and deps are the keys of the two maps."""
        return cls(
            tasks=frozenset(compute_cost),
            deps=frozenset(data_size),
            compute_cost=dict(compute_cost),
            data_size=dict(data_size),
        )

    def successors(self, task: TaskId) -> tuple[TaskId, ...]:
        return self._succs[task]

    def predecessors(self, task: TaskId) -> tuple[TaskId, ...]:
        return self._preds[task]


def topological_order(task_graph: TaskGraph) -> tuple[TaskId, ...]:
    """Deterministic topological order (Kahn, ready set sorted by task id)."""
    return task_graph._topo


@dataclass(frozen=True, eq=True)
class Network:
    """Complete undirected network of compute nodes.

    ``speed`` is work per unit time; ``strength`` is data per unit time on
    the link between a pair of distinct nodes, keyed by the sorted id
    pair.  Every unordered pair of distinct nodes must carry a strength.
    """

    nodes: frozenset[NodeId]
    speed: dict[NodeId, float]
    strength: dict[tuple[NodeId, NodeId], float]
    _order: tuple[NodeId, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        normalized: dict[tuple[NodeId, NodeId], float] = {}
        for (u, v), value in self.strength.items():
            if u == v:
                raise ValueError(f"self-link on node {u!r}")
            key = (u, v) if u < v else (v, u)
            if key in normalized and normalized[key] != value:
                raise ValueError(f"conflicting strengths for link {key}")
            normalized[key] = value
        object.__setattr__(self, "strength", normalized)
        object.__setattr__(self, "speed", dict(self.speed))
        object.__setattr__(self, "_order", tuple(sorted(self.nodes)))

        if set(self.speed) != self.nodes:
            raise ValueError("speed must be defined for exactly the node set")
        _check_positive("speed", self.speed, self.nodes)
        expected = {
            (u, v) for i, u in enumerate(self._order) for v in self._order[i + 1 :]
        }
        if set(self.strength) != expected:
            raise ValueError("strength must cover every unordered pair of distinct nodes")
        _check_positive("strength", self.strength, expected)

    def node_order(self) -> tuple[NodeId, ...]:
        return self._order

    def link_strength(self, u: NodeId, v: NodeId) -> float:
        if u == v:
            raise KeyError(f"no link from node {u!r} to itself")
        return self.strength[(u, v) if u < v else (v, u)]


@dataclass(frozen=True, eq=True)
class ProblemInstance:
    """A network/task-graph pair to be scheduled."""

    network: Network
    task_graph: TaskGraph


@dataclass(frozen=True, eq=True)
class ScheduleEntry:
    """One placed task: runs on ``node`` over the interval [start, end]."""

    task: TaskId
    node: NodeId
    start: float
    end: float

    def __post_init__(self) -> None:
        if self.start < 0:
            raise ValueError(f"entry for {self.task!r} has negative start {self.start!r}")
        if self.end < self.start:
            raise ValueError(f"entry for {self.task!r} ends before it starts")


@dataclass(frozen=True, eq=True)
class Schedule:
    """A list of schedule entries, kept in the order tasks were placed."""

    entries: tuple[ScheduleEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    def __iter__(self) -> Iterator[ScheduleEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


class ViolationKind(enum.Enum):
    UNSCHEDULED_TASK = "UnscheduledTask"
    DUPLICATE_TASK = "DuplicateTask"
    WRONG_DURATION = "WrongDuration"
    NODE_OVERLAP = "NodeOverlap"
    PRECEDENCE_VIOLATION = "PrecedenceViolation"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str


def exec_time(instance: ProblemInstance, task: TaskId, node: NodeId) -> float:
    """Execution time of ``task`` on ``node``: compute cost over node speed."""
    cost = instance.task_graph.compute_cost[task]
    return cost / instance.network.speed[node]


def comm_time(
    instance: ProblemInstance,
    dep: tuple[TaskId, TaskId],
    src: NodeId,
    dst: NodeId,
) -> float:
    """Transfer time of the data on ``dep`` from ``src`` to ``dst``.

    Zero when both endpoints run on the same node; otherwise data size
    over link strength.
    """
    size = instance.task_graph.data_size[dep]
    if src == dst:
        if src not in instance.network.nodes:
            raise KeyError(f"unknown node {src!r}")
        return 0.0
    return size / instance.network.link_strength(src, dst)


def data_available_time(
    instance: ProblemInstance,
    partial: Schedule,
    task: TaskId,
    node: NodeId,
) -> float:
    """Earliest time all of ``task``'s dependency data can be on ``node``.

    Every predecessor of ``task`` must appear exactly once in ``partial``.
    """
    placed: dict[TaskId, ScheduleEntry] = {}
    counts: Counter[TaskId] = Counter()
    for entry in partial.entries:
        placed[entry.task] = entry
        counts[entry.task] += 1
    preds = instance.task_graph.predecessors(task)
    for p in preds:
        if counts[p] != 1:
            raise ValueError(
                f"predecessor {p!r} of {task!r} scheduled {counts[p]} times, expected once"
            )
    finish = {t: (e.node, e.end) for t, e in placed.items()}
    return _data_ready(instance, task, node, finish)


def _data_ready(
    instance: ProblemInstance,
    task: TaskId,
    node: NodeId,
    finish: Mapping[TaskId, tuple[NodeId, float]],
) -> float:
    """Core of data_available_time against a task -> (node, end) map."""
    network = instance.network
    sizes = instance.task_graph.data_size
    ready = 0.0
    for p in instance.task_graph.predecessors(task):
        p_node, p_end = finish[p]
        if p_node == node:
            t = p_end
        else:
            t = p_end + sizes[(p, task)] / network.link_strength(p_node, node)
        if t > ready:
            ready = t
    return ready


def makespan(schedule: Schedule) -> float:
    """Finish time of the last entry; 0 for an empty schedule."""
    return max((e.end for e in schedule.entries), default=0.0)


def validate_schedule(instance: ProblemInstance, schedule: Schedule) -> list[Violation]:
    """Check a schedule against the instance and report every violation.

    The four validity properties checked are: every task scheduled exactly
    once, entry durations equal to the execution time of their (task,
    node) pair, no two entries overlapping on a node (touching endpoints
    are legal), and no entry starting before its dependency data can
    arrive.  Violations are collected exhaustively rather than fail-fast.

    Raises KeyError if an entry references a task or node the instance
    does not define.
    """
    tg = instance.task_graph
    violations: list[Violation] = []

    for entry in schedule.entries:
        if entry.task not in tg.tasks:
            raise KeyError(f"schedule references unknown task {entry.task!r}")
        if entry.node not in instance.network.nodes:
            raise KeyError(f"schedule references unknown node {entry.node!r}")

    by_task: dict[TaskId, list[ScheduleEntry]] = {}
    for entry in schedule.entries:
        by_task.setdefault(entry.task, []).append(entry)

    for task in sorted(tg.tasks):
        hits = by_task.get(task, [])
        if not hits:
            violations.append(
                Violation(ViolationKind.UNSCHEDULED_TASK, f"task {task!r} is not scheduled")
            )
        elif len(hits) > 1:
            violations.append(
                Violation(
                    ViolationKind.DUPLICATE_TASK,
                    f"task {task!r} scheduled {len(hits)} times: "
                    + ", ".join(f"({e.node}, {e.start}, {e.end})" for e in hits),
                )
            )

    for entry in schedule.entries:
        expected = exec_time(instance, entry.task, entry.node)
        actual = entry.end - entry.start
        if abs(actual - expected) > DURATION_RTOL * max(1.0, expected):
            violations.append(
                Violation(
                    ViolationKind.WRONG_DURATION,
                    f"task {entry.task!r} on {entry.node!r} runs for {actual!r}, "
                    f"expected {expected!r}",
                )
            )

    by_node: dict[NodeId, list[ScheduleEntry]] = {}
    for entry in schedule.entries:
        by_node.setdefault(entry.node, []).append(entry)
    for node in sorted(by_node):
        entries = sorted(by_node[node], key=lambda e: (e.start, e.end, e.task))
        for i, a in enumerate(entries):
            for b in entries[i + 1 :]:
                if b.start >= a.end:
                    break
                # open intervals: a.end == b.start is legal
                if a.start < b.end and b.start < a.end:
                    violations.append(
                        Violation(
                            ViolationKind.NODE_OVERLAP,
                            f"tasks {a.task!r} ({a.start}, {a.end}) and {b.task!r} "
                            f"({b.start}, {b.end}) overlap on node {node!r}",
                        )
                    )

    singly = {t: hits[0] for t, hits in by_task.items() if len(hits) == 1}
    for src, dst in sorted(tg.deps):
        if src not in singly or dst not in singly:
            continue  # already reported as unscheduled/duplicate
        e_src, e_dst = singly[src], singly[dst]
        required = e_src.end + comm_time(instance, (src, dst), e_src.node, e_dst.node)
        if e_dst.start < required:
            violations.append(
                Violation(
                    ViolationKind.PRECEDENCE_VIOLATION,
                    f"task {dst!r} starts at {e_dst.start!r} but data from {src!r} "
                    f"arrives at {required!r}",
                )
            )

    return violations


# ---------------------------------------------------------------------------
# JSON serialization
#
# Instance files:
#   {"network": {"nodes": [{"id", "speed"}...], "links": [{"u", "v", "strength"}...]},
#    "task_graph": {"tasks": [{"id", "cost"}...], "deps": [{"src", "dst", "size"}...]}}
# Schedule files:
#   {"entries": [{"task", "node", "start", "end"}...]}
#
# Floats are emitted with Python's repr, the shortest decimal form that
# parses back to the exact same double, so files round-trip losslessly and
# regeneration is byte-identical.
# ---------------------------------------------------------------------------


def instance_to_dict(instance: ProblemInstance) -> dict:
    net = instance.network
    tg = instance.task_graph
    return {
        "network": {
            "nodes": [{"id": n, "speed": net.speed[n]} for n in net.node_order()],
            "links": [
                {"u": u, "v": v, "strength": net.strength[(u, v)]}
                for (u, v) in sorted(net.strength)
            ],
        },
        "task_graph": {
            "tasks": [{"id": t, "cost": tg.compute_cost[t]} for t in sorted(tg.tasks)],
            "deps": [
                {"src": s, "dst": d, "size": tg.data_size[(s, d)]}
                for (s, d) in sorted(tg.deps)
            ],
        },
    }


def instance_from_dict(data: Mapping) -> ProblemInstance:
    net = data["network"]
    tg = data["task_graph"]
    network = Network(
        nodes=frozenset(str(n["id"]) for n in net["nodes"]),
        speed={str(n["id"]): float(n["speed"]) for n in net["nodes"]},
        strength={
            (str(l["u"]), str(l["v"])): float(l["strength"]) for l in net["links"]
        },
    )
    task_graph = TaskGraph(
        tasks=frozenset(str(t["id"]) for t in tg["tasks"]),
        deps=frozenset((str(d["src"]), str(d["dst"])) for d in tg["deps"]),
        compute_cost={str(t["id"]): float(t["cost"]) for t in tg["tasks"]},
        data_size={
            (str(d["src"]), str(d["dst"])): float(d["size"]) for d in tg["deps"]
        },
    )
    return ProblemInstance(network=network, task_graph=task_graph)


def schedule_to_dict(schedule: Schedule) -> dict:
    return {
        "entries": [
            {"task": e.task, "node": e.node, "start": e.start, "end": e.end}
            for e in schedule.entries
        ]
    }


def schedule_from_dict(data: Mapping) -> Schedule:
    return Schedule(
        entries=tuple(
            ScheduleEntry(
                task=str(e["task"]),
                node=str(e["node"]),
                start=float(e["start"]),
                end=float(e["end"]),
            )
            for e in data["entries"]
        )
    )


def save_instance(instance: ProblemInstance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n")


def load_instance(path: str | Path) -> ProblemInstance:
    return instance_from_dict(json.loads(Path(path).read_text()))


def save_schedule(schedule: Schedule, path: str | Path) -> None:
    Path(path).write_text(json.dumps(schedule_to_dict(schedule), indent=2) + "\n")


def load_schedule(path: str | Path) -> Schedule:
    return schedule_from_dict(json.loads(Path(path).read_text()))
