"""Random problem-instance generators and CCR scaling.

Three task-graph families are generated: perfect in-trees and out-trees
(2 to 4 levels, branching factor 2 or 3) and parallel chains (2 to 5
chains of length 2 to 5, joined by a shared source and sink task so the
graph is connected).  Networks are complete graphs on 3 to 5 nodes.
Every weight is drawn from a Gaussian with mean 1 and standard deviation
1/3, redrawn until it falls in (0, 2]; zero is excluded because a zero
speed, strength or cost would make timing degenerate.

After generation the network strengths are rescaled multiplicatively so
the instance hits a target communication-to-computation ratio exactly.
All randomness flows through numpy generators seeded per instance by
spawning a named seed sequence, so datasets are pure functions of their
parameters and individual instances could be drawn in parallel.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import (
    Network,
    ProblemInstance,
    TaskGraph,
    instance_from_dict,
    instance_to_dict,
)

#: Relative accuracy of CCR scaling, used by tests and the generators.
CCR_RTOL = 1e-9

#: The CCR levels studied in the component benchmarks.
STANDARD_CCRS = (0.2, 0.5, 1.0, 2.0, 5.0)


class GraphKind(enum.Enum):
    IN_TREES = "in_trees"
    OUT_TREES = "out_trees"
    CHAINS = "chains"


@dataclass(frozen=True)
class GenParams:
    kind: GraphKind
    seed: int
    count: int
    target_ccr: float

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not self.target_ccr > 0:
            raise ValueError("target_ccr must be positive")


@dataclass(frozen=True)
class Dataset:
    name: str
    instances: tuple[ProblemInstance, ...]


def sample_weight(rng: np.random.Generator) -> float:
    """One clipped-Gaussian weight: Normal(1, 1/3) redrawn into (0, 2]."""
    while True:
        x = rng.normal(1.0, 1.0 / 3.0)
        if 0.0 < x <= 2.0:
            return float(x)


class TreeDirection(enum.Enum):
    IN = "in"
    OUT = "out"


def gen_tree(rng: np.random.Generator, direction: TreeDirection) -> TaskGraph:
    """Perfect tree task graph; edges point away from (Out) or into (In) the root."""
    levels = int(rng.integers(2, 5))
    branching = int(rng.integers(2, 4))
    n = sum(branching**i for i in range(levels))
    names = [f"t{i:03d}" for i in range(n)]
    costs = {name: sample_weight(rng) for name in names}
    sizes: dict[tuple[str, str], float] = {}
    # node i's children are branching*i + 1 ... branching*i + branching
    for parent in range(n):
        for k in range(1, branching + 1):
            child = branching * parent + k
            if child >= n:
                break
            if direction is TreeDirection.OUT:
                edge = (names[parent], names[child])
            else:
                edge = (names[child], names[parent])
            sizes[edge] = sample_weight(rng)
    return TaskGraph.from_costs(costs, sizes)


def gen_chains(rng: np.random.Generator) -> TaskGraph:
    """Parallel chains joined by a shared source and a shared sink task."""
    n_chains = int(rng.integers(2, 6))
    lengths = [int(rng.integers(2, 6)) for _ in range(n_chains)]
    total = 2 + sum(lengths)
    names = [f"t{i:03d}" for i in range(total)]
    source, sink = names[0], names[-1]
    costs = {name: sample_weight(rng) for name in names}
    sizes: dict[tuple[str, str], float] = {}
    next_id = 1
    for length in lengths:
        chain = names[next_id : next_id + length]
        next_id += length
        sizes[(source, chain[0])] = sample_weight(rng)
        for a, b in zip(chain, chain[1:]):
            sizes[(a, b)] = sample_weight(rng)
        sizes[(chain[-1], sink)] = sample_weight(rng)
    return TaskGraph.from_costs(costs, sizes)


def gen_task_graph(rng: np.random.Generator, kind: GraphKind) -> TaskGraph:
    if kind is GraphKind.IN_TREES:
        return gen_tree(rng, TreeDirection.IN)
    if kind is GraphKind.OUT_TREES:
        return gen_tree(rng, TreeDirection.OUT)
    if kind is GraphKind.CHAINS:
        return gen_chains(rng)
    raise ValueError(f"unknown graph kind {kind!r}")


def gen_network(rng: np.random.Generator) -> Network:
    """Complete network on 3 to 5 nodes with clipped-Gaussian weights."""
    n = int(rng.integers(3, 6))
    names = [f"n{i}" for i in range(n)]
    speed = {name: sample_weight(rng) for name in names}
    strength = {
        (names[i], names[j]): sample_weight(rng)
        for i in range(n)
        for j in range(i + 1, n)
    }
    return Network(nodes=frozenset(names), speed=speed, strength=strength)


def ccr(instance: ProblemInstance) -> float:
    """Mean pairwise communication time over mean per-node execution time."""
    tg = instance.task_graph
    net = instance.network
    if not tg.deps:
        raise ValueError("CCR undefined: task graph has no dependencies")
    if not net.strength:
        raise ValueError("CCR undefined: single-node network has no links")
    mean_size = sum(tg.data_size.values()) / len(tg.data_size)
    mean_recip_strength = sum(1.0 / s for s in net.strength.values()) / len(net.strength)
    mean_cost = sum(tg.compute_cost.values()) / len(tg.compute_cost)
    mean_recip_speed = sum(1.0 / s for s in net.speed.values()) / len(net.speed)
    return (mean_size * mean_recip_strength) / (mean_cost * mean_recip_speed)


def scale_to_ccr(instance: ProblemInstance, target: float) -> ProblemInstance:
    """Rescale all link strengths so the instance's CCR equals ``target``."""
    if not target > 0:
        raise ValueError("target CCR must be positive")
    factor = ccr(instance) / target
    net = instance.network
    scaled = Network(
        nodes=net.nodes,
        speed=dict(net.speed),
        strength={pair: s * factor for pair, s in net.strength.items()},
    )
    return ProblemInstance(network=scaled, task_graph=instance.task_graph)


def dataset_name(kind: GraphKind, target_ccr: float) -> str:
    return f"{kind.value}_ccr_{target_ccr:g}"


def gen_dataset(params: GenParams, name: str | None = None) -> Dataset:
    """Generate ``count`` independent instances at the target CCR.

    Each instance gets its own generator spawned from the dataset seed, so
    the result depends only on ``params`` and instance i is reproducible
    without drawing instances 0..i-1.
    """
    if name is None:
        name = dataset_name(params.kind, params.target_ccr)
    children = np.random.SeedSequence(params.seed).spawn(params.count)
    instances = []
    for child in children:
        rng = np.random.default_rng(child)
        network = gen_network(rng)
        task_graph = gen_task_graph(rng, params.kind)
        instance = ProblemInstance(network=network, task_graph=task_graph)
        instances.append(scale_to_ccr(instance, params.target_ccr))
    return Dataset(name=name, instances=tuple(instances))


# ---------------------------------------------------------------------------
# Dataset directories: one instance JSON per file plus a manifest.
# ---------------------------------------------------------------------------


def save_dataset(dataset: Dataset, params: GenParams, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "name": dataset.name,
        "kind": params.kind.value,
        "target_ccr": params.target_ccr,
        "seed": params.seed,
        "count": params.count,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    for i, instance in enumerate(dataset.instances):
        path = out / f"instance_{i:03d}.json"
        path.write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n")


def load_dataset(dir_path: str | Path) -> Dataset:
    path = Path(dir_path)
    manifest = json.loads((path / "manifest.json").read_text())
    instances = []
    for i in range(int(manifest["count"])):
        data = json.loads((path / f"instance_{i:03d}.json").read_text())
        instances.append(instance_from_dict(data))
    return Dataset(name=str(manifest["name"]), instances=tuple(instances))
