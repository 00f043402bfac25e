"""Shared builders for the test suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from listsched import Network, ProblemInstance, TaskGraph


def unit_network(n: int) -> Network:
    """n nodes, all speeds and strengths 1."""
    names = [f"n{i}" for i in range(n)]
    return Network(
        nodes=frozenset(names),
        speed={v: 1.0 for v in names},
        strength={(a, b): 1.0 for a, b in itertools.combinations(names, 2)},
    )


def mk_instance(costs, sizes, speeds, strengths=None) -> ProblemInstance:
    """Instance from plain dicts; strengths default to 1 on every link."""
    nodes = sorted(speeds)
    if strengths is None:
        strengths = {pair: 1.0 for pair in itertools.combinations(nodes, 2)}
    return ProblemInstance(
        network=Network(nodes=frozenset(nodes), speed=dict(speeds), strength=dict(strengths)),
        task_graph=TaskGraph.from_costs(costs, sizes),
    )


def random_instance(
    rng: np.random.Generator,
    max_tasks: int = 10,
    max_nodes: int = 5,
    min_tasks: int = 1,
    min_nodes: int = 1,
    edge_prob: float = 0.35,
) -> ProblemInstance:
    """Random DAG (edges only from lower to higher index) on a random network."""
    n_tasks = int(rng.integers(min_tasks, max_tasks + 1))
    n_nodes = int(rng.integers(min_nodes, max_nodes + 1))
    tasks = [f"t{i:02d}" for i in range(n_tasks)]
    costs = {t: float(rng.uniform(0.1, 2.0)) for t in tasks}
    sizes = {}
    for i in range(n_tasks):
        for j in range(i + 1, n_tasks):
            if rng.random() < edge_prob:
                sizes[(tasks[i], tasks[j])] = float(rng.uniform(0.1, 2.0))
    nodes = [f"n{i}" for i in range(n_nodes)]
    speeds = {v: float(rng.uniform(0.3, 2.0)) for v in nodes}
    strengths = {
        (a, b): float(rng.uniform(0.3, 2.0))
        for a, b in itertools.combinations(nodes, 2)
    }
    return ProblemInstance(
        network=Network(nodes=frozenset(nodes), speed=speeds, strength=strengths),
        task_graph=TaskGraph.from_costs(costs, sizes),
    )


@pytest.fixture
def chain_fast_slow() -> ProblemInstance:
    """A -> B chain, unit costs/sizes, n1 speed 1 and n2 speed 2."""
    return mk_instance(
        costs={"A": 1.0, "B": 1.0},
        sizes={("A", "B"): 1.0},
        speeds={"n1": 1.0, "n2": 2.0},
    )
