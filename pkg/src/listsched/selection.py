"""Node-selection building blocks: window finders and comparison functions.

A window is a candidate (start, end) interval for running one task on one
node given a partial schedule.  The append-only finder only looks past the
last entry on the node; the insertion finder scans the idle gap before the
first entry, the gaps between consecutive entries, and the tail, returning
the earliest window that fits.  Comparison functions reduce two windows to
a signed number, negative iff the first window is better.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

from .model import (
    NodeId,
    ProblemInstance,
    Schedule,
    ScheduleEntry,
    TaskId,
    data_available_time,
    exec_time,
)


class Window(NamedTuple):
    start: float
    end: float


class CompareKind(enum.Enum):
    EFT = "EFT"  # earliest finish time
    EST = "EST"  # earliest start time
    QUICKEST = "Quickest"  # shortest execution time


def compare(kind: CompareKind, a: Window, b: Window) -> float:
    """Signed comparison of two candidate windows; negative iff ``a`` is better."""
    if kind is CompareKind.EFT:
        return a.end - b.end
    if kind is CompareKind.EST:
        return a.start - b.start
    if kind is CompareKind.QUICKEST:
        return (a.end - a.start) - (b.end - b.start)
    raise ValueError(f"unknown compare kind {kind!r}")


def _append_window(last_end: float, ready: float, duration: float) -> Window:
    start = max(last_end, ready)
    return Window(start, start + duration)


def _insertion_window(
    entries: list[ScheduleEntry], ready: float, duration: float
) -> Window:
    """Earliest fitting window given the node's entries sorted by start.

    Gap fitting is closed-start/open-end: a window may end exactly where
    the next entry starts.  The gap before the first entry counts.
    """
    if not entries:
        return Window(ready, ready + duration)
    if ready + duration <= entries[0].start:
        return Window(ready, ready + duration)
    last = len(entries) - 1
    for i, e in enumerate(entries):
        start = e.end if e.end > ready else ready
        end = start + duration
        if i == last or end <= entries[i + 1].start:
            return Window(start, end)
    raise AssertionError("unreachable: tail gap always fits")


def _entries_on_node(partial: Schedule, node: NodeId) -> list[ScheduleEntry]:
    return sorted(
        (e for e in partial.entries if e.node == node), key=lambda e: e.start
    )


def open_window_append_only(
    instance: ProblemInstance, partial: Schedule, node: NodeId, task: TaskId
) -> Window:
    """Window starting after the last entry on ``node`` (and data arrival)."""
    last_end = max((e.end for e in partial.entries if e.node == node), default=0.0)
    ready = data_available_time(instance, partial, task, node)
    return _append_window(last_end, ready, exec_time(instance, task, node))


def open_window_insertion(
    instance: ProblemInstance, partial: Schedule, node: NodeId, task: TaskId
) -> Window:
    """Earliest idle window on ``node`` large enough for ``task``."""
    ready = data_available_time(instance, partial, task, node)
    return _insertion_window(
        _entries_on_node(partial, node), ready, exec_time(instance, task, node)
    )
