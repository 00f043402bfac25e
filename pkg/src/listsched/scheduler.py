"""The generalized parametric list scheduler and its 72 configurations.

A configuration is a 5-tuple of component choices: the priority function,
the window comparison function, append-only vs. insertion-based window
finding, whether critical-path tasks are reserved for the fastest node,
and whether the top two queued tasks are arbitrated by sufferage.  The
full cross product yields 72 schedulers, each with a stable canonical
name (for example ``EFT_Ins_UR_Suf``); four of them carry the classic
aliases HEFT, MCT, MET and Sufferage.

The scheduler repeatedly takes the highest-priority task whose
predecessors are all placed.  Working from the ready set (rather than the
raw priority order) keeps the placement order topological even for
CPoP-style priorities, whose raw values are not monotone along dependency
edges on general DAGs.  Ties are broken by position in the deterministic
topological order, so runs are bitwise reproducible.
"""

from __future__ import annotations

import heapq
import itertools
from bisect import insort
from dataclasses import dataclass
from typing import Callable, Sequence

from .model import (
    NodeId,
    ProblemInstance,
    Schedule,
    ScheduleEntry,
    TaskId,
    topological_order,
)
from .priority import PriorityKind, critical_path_tasks, priority_map
from .selection import (
    CompareKind,
    Window,
    _append_window,
    _insertion_window,
    compare,
)

WindowFinder = Callable[[ProblemInstance, Schedule, NodeId, TaskId], Window]


@dataclass(frozen=True)
class SchedulerConfig:
    """One point in the 3 x 3 x 2 x 2 x 2 component space."""

    initial_priority: PriorityKind
    compare: CompareKind
    append_only: bool
    critical_path: bool
    sufferage: bool


_PRIORITY_ABBR = {
    PriorityKind.UPWARD_RANKING: "UR",
    PriorityKind.CPOP_RANKING: "CR",
    PriorityKind.ARBITRARY_TOPOLOGICAL: "AT",
}

#: Classic names for four of the 72 configurations.
ALIASES: dict[str, SchedulerConfig] = {
    "HEFT": SchedulerConfig(
        PriorityKind.UPWARD_RANKING, CompareKind.EFT, False, False, False
    ),
    "MCT": SchedulerConfig(
        PriorityKind.ARBITRARY_TOPOLOGICAL, CompareKind.EFT, True, False, False
    ),
    "MET": SchedulerConfig(
        PriorityKind.ARBITRARY_TOPOLOGICAL, CompareKind.QUICKEST, True, False, False
    ),
    "Sufferage": SchedulerConfig(
        PriorityKind.ARBITRARY_TOPOLOGICAL, CompareKind.EFT, True, False, True
    ),
}


def canonical_name(config: SchedulerConfig) -> str:
    """Stable name, e.g. EST_Ins_CP_AT: compare, window scheme, [CP], priority, [Suf]."""
    parts = [config.compare.value, "App" if config.append_only else "Ins"]
    if config.critical_path:
        parts.append("CP")
    parts.append(_PRIORITY_ABBR[config.initial_priority])
    if config.sufferage:
        parts.append("Suf")
    return "_".join(parts)


def enumerate_configs() -> list[tuple[str, SchedulerConfig]]:
    """All 72 (canonical name, config) pairs in deterministic order."""
    out = []
    for priority, cmp_kind, append_only, critical, suff in itertools.product(
        PriorityKind, CompareKind, (False, True), (False, True), (False, True)
    ):
        config = SchedulerConfig(priority, cmp_kind, append_only, critical, suff)
        out.append((canonical_name(config), config))
    return out


def alias_of(config: SchedulerConfig) -> str | None:
    for alias, aliased in ALIASES.items():
        if aliased == config:
            return alias
    return None


_BY_NAME: dict[str, SchedulerConfig] = {}


def config_by_name(name: str) -> SchedulerConfig:
    """Look up a configuration by canonical name or classic alias."""
    if not _BY_NAME:
        _BY_NAME.update(enumerate_configs())
        _BY_NAME.update(ALIASES)
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown scheduler name {name!r}") from None


def _top_two(
    candidates: Sequence[NodeId],
    window_of: Callable[[NodeId], Window],
    kind: CompareKind,
) -> tuple[NodeId, Window, NodeId | None, Window | None]:
    """Best and second-best candidate under the comparison function.

    The scan seeds best with the first candidate and second-best with the
    first candidate that fails to displace it, so ties go to the earlier
    candidate and the pair is well defined even for two candidates.
    """
    best = candidates[0]
    best_window = window_of(best)
    second: NodeId | None = None
    second_window: Window | None = None
    for node in candidates[1:]:
        window = window_of(node)
        if compare(kind, window, best_window) < 0:
            second, second_window = best, best_window
            best, best_window = node, window
        elif second is None or compare(kind, window, second_window) < 0:
            second, second_window = node, window
    return best, best_window, second, second_window


def best_two_nodes(
    instance: ProblemInstance,
    partial: Schedule,
    task: TaskId,
    candidates: Sequence[NodeId],
    compare_kind: CompareKind,
    window_finder: WindowFinder,
) -> tuple[NodeId, Window, NodeId | None, Window | None]:
    """Best and second-best node for ``task`` against a partial schedule."""
    if not candidates:
        raise ValueError("candidate node list is empty")
    return _top_two(
        candidates,
        lambda node: window_finder(instance, partial, node, task),
        compare_kind,
    )


class _PlacementState:
    """Incremental schedule state shared by the window finders."""

    __slots__ = ("instance", "node_entries", "finish", "entries")

    def __init__(self, instance: ProblemInstance, nodes: Sequence[NodeId]):
        self.instance = instance
        self.node_entries: dict[NodeId, list[ScheduleEntry]] = {v: [] for v in nodes}
        self.finish: dict[TaskId, tuple[NodeId, float]] = {}
        self.entries: list[ScheduleEntry] = []

    def data_ready(self, task: TaskId, node: NodeId) -> float:
        tg = self.instance.task_graph
        network = self.instance.network
        ready = 0.0
        for p in tg.predecessors(task):
            p_node, p_end = self.finish[p]
            if p_node == node:
                t = p_end
            else:
                t = p_end + tg.data_size[(p, task)] / network.link_strength(p_node, node)
            if t > ready:
                ready = t
        return ready

    def window(self, task: TaskId, node: NodeId, append_only: bool) -> Window:
        duration = self.instance.task_graph.compute_cost[task] / self.instance.network.speed[node]
        ready = self.data_ready(task, node)
        entries = self.node_entries[node]
        if append_only:
            last_end = entries[-1].end if entries else 0.0
            return _append_window(last_end, ready, duration)
        return _insertion_window(entries, ready, duration)

    def place(self, task: TaskId, node: NodeId, window: Window) -> None:
        entry = ScheduleEntry(task=task, node=node, start=window.start, end=window.end)
        insort(self.node_entries[node], entry, key=lambda e: e.start)
        self.finish[task] = (node, window.end)
        self.entries.append(entry)


def schedule(instance: ProblemInstance, config: SchedulerConfig) -> Schedule:
    """Run the parametric list scheduler and return a valid schedule.

    Tasks are placed one per iteration: the ready task with the highest
    priority (ties: earlier topological position) is matched against every
    candidate node's open window under the configured comparison function.
    With critical-path reservation, tasks on the critical path may only go
    to the fastest node (smallest id among maximal speeds).  With
    sufferage, the two best ready tasks are compared by how much each
    would lose on its second-best node, the bigger loser is placed, and
    the other returns to the queue; the arbitration is skipped when either
    of the two is critical-path-reserved, since a reserved task has no
    alternative node to suffer on.

    Entries appear in the returned schedule in placement order.
    """
    nodes = instance.network.node_order()
    if not nodes:
        raise ValueError("cannot schedule on an empty network")
    tg = instance.task_graph

    priorities = priority_map(instance, config.initial_priority)
    topo_pos = {t: i for i, t in enumerate(topological_order(tg))}

    reserved: NodeId | None = None
    cp_tasks: frozenset[TaskId] = frozenset()
    if config.critical_path:
        speed = instance.network.speed
        reserved = min(nodes, key=lambda v: (-speed[v], v))
        cp_tasks = frozenset(critical_path_tasks(instance))

    state = _PlacementState(instance, nodes)
    append_only = config.append_only
    kind = config.compare

    indeg = {t: len(tg.predecessors(t)) for t in tg.tasks}
    ready = [(-priorities[t], topo_pos[t], t) for t in tg.tasks if indeg[t] == 0]
    heapq.heapify(ready)

    def candidates_for(task: TaskId) -> Sequence[NodeId]:
        if task in cp_tasks:
            return (reserved,)
        return nodes

    def top_two_for(task: TaskId) -> tuple[NodeId, Window, NodeId | None, Window | None]:
        return _top_two(
            candidates_for(task),
            lambda node: state.window(task, node, append_only),
            kind,
        )

    def sufferage_value(best_w: Window, second_w: Window | None) -> float:
        if second_w is None:
            return 0.0
        return compare(kind, second_w, best_w)

    while ready:
        key = heapq.heappop(ready)
        task = key[2]
        best, best_w, second, second_w = top_two_for(task)

        if (
            config.sufferage
            and ready
            and task not in cp_tasks
            and ready[0][2] not in cp_tasks
        ):
            rival_key = heapq.heappop(ready)
            rival = rival_key[2]
            r_best, r_best_w, r_second, r_second_w = top_two_for(rival)
            if sufferage_value(r_best_w, r_second_w) > sufferage_value(best_w, second_w):
                heapq.heappush(ready, key)
                task, best, best_w = rival, r_best, r_best_w
            else:
                heapq.heappush(ready, rival_key)

        state.place(task, best, best_w)
        for s in tg.successors(task):
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(ready, (-priorities[s], topo_pos[s], s))

    return Schedule(entries=tuple(state.entries))
