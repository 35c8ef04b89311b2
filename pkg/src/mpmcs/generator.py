"""Seeded random fault-tree generation.

Top-down construction against a node budget: a budget of one makes a
basic event, anything larger opens a gate and splits the remaining
budget across its children.  Acyclicity and full reachability hold by
construction, the node count is exactly the target, and equal parameters
always produce structurally equal trees.  Splits can be lopsided, so the
builder keeps an explicit stack instead of recursing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fault_tree import BasicEvent, FaultTree, Gate, GateOp, Node


@dataclass(frozen=True)
class GeneratorParams:
    nodes: int = 100
    max_fanin: int = 4
    and_fraction: float = 0.4
    prob_low: float = 0.01
    prob_high: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError("node target must be >= 1")
        if self.max_fanin < 2:
            raise ValueError("max fan-in must be >= 2")
        if not 0.0 <= self.and_fraction <= 1.0:
            raise ValueError("AND fraction must lie in [0, 1]")
        if not (0.0 < self.prob_low < self.prob_high < 1.0):
            raise ValueError("probability range must satisfy 0 < low < high < 1")


def random_fault_tree(params: GeneratorParams) -> FaultTree:
    rng = random.Random(params.seed)
    nodes: dict[str, Node] = {}
    n_events = 0
    n_gates = 0

    def new_event() -> str:
        nonlocal n_events
        n_events += 1
        nid = f"e{n_events}"
        nodes[nid] = BasicEvent(nid, rng.uniform(params.prob_low, params.prob_high))
        return nid

    if params.nodes == 1:
        top = new_event()
        return FaultTree(name=f"random-{params.seed}", nodes=nodes, top=top)

    # Stack frames: (gate id, op, pending child budgets, finished child ids).
    # A placeholder reserves the gate's slot so ids appear in preorder.
    stack: list[tuple[str, GateOp, list[int], list[str]]] = []

    def open_gate(budget: int) -> str:
        nonlocal n_gates
        n_gates += 1
        nid = f"g{n_gates}"
        op = GateOp.AND if rng.random() < params.and_fraction else GateOp.OR
        fanin = min(params.max_fanin, budget - 1)
        k = rng.randint(2, fanin) if fanin >= 2 else 1
        nodes[nid] = None  # type: ignore[assignment]
        stack.append((nid, op, _split_budget(rng, budget - 1, k), []))
        return nid

    top = open_gate(params.nodes)
    while stack:
        nid, op, pending, done = stack[-1]
        if not pending:
            nodes[nid] = Gate(nid, op, tuple(done))
            stack.pop()
            if stack:
                stack[-1][3].append(nid)
            continue
        share = pending.pop(0)
        if share <= 1:
            done.append(new_event())
        else:
            open_gate(share)
    return FaultTree(name=f"random-{params.seed}", nodes=nodes, top=top)


def _split_budget(rng: random.Random, budget: int, k: int) -> list[int]:
    """Split ``budget`` into k parts, each >= 1, uniformly over cut points."""
    if k == 1:
        return [budget]
    cuts = sorted(rng.sample(range(1, budget), k - 1))
    edges = [0] + cuts + [budget]
    return [edges[i + 1] - edges[i] for i in range(k)]
