"""CNF encoding and weighted-instance assembly.

The failure formula is turned into an equisatisfiable CNF with one
variable per basic event and one auxiliary variable per gate (full
biconditional Tseitin clauses, plus a unit clause asserting the root).
Event probabilities move to log space, ``w = -ln p``, so that minimising a
sum of falsified soft-clause weights maximises the joint probability of
the chosen events.

Literals are DIMACS-style signed integers: ``v`` is the positive literal
of variable ``v >= 1`` and ``-v`` its negation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .fault_tree import (
    And,
    BooleanFormula,
    FaultTree,
    Gate,
    Var,
    formula_events,
    to_formula,
)

Literal = int
Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")


@dataclass(frozen=True)
class VarMap:
    """Bookkeeping between event ids, CNF variables, and Tseitin auxiliaries."""

    var_of_event: dict[str, int]
    event_of_var: dict[int, str]
    aux_vars: frozenset[int]
    root_var: int

    @property
    def num_vars(self) -> int:
        return len(self.var_of_event) + len(self.aux_vars)


# Event id -> strictly positive, finite log-space weight.
WeightMap = dict[str, float]


@dataclass(frozen=True)
class WcnfInstance:
    """Weighted partial MaxSAT instance for one fault tree.

    ``hard`` asserts that the failure formula holds.  ``soft`` holds one
    ``(event variable, weight)`` pair per basic event; the implied unit
    soft clause prefers the event variable false, so the weight is paid
    exactly when the event takes part in the failure.

    ``formula`` is the failure formula the hard clauses were compiled
    from; ``gate_var_of`` maps formula-node identity to its auxiliary
    variable and ``tree_shaped`` records whether any node is shared
    (both are used by solver-side bounds and consistency checks).
    """

    hard: CnfFormula
    soft: tuple[tuple[int, float], ...]
    var_map: VarMap
    formula: BooleanFormula
    gate_var_of: dict[int, int]
    tree_shaped: bool

    def soft_weight_of_var(self) -> dict[int, float]:
        return dict(self.soft)


def to_log_space(p: float) -> float:
    """-ln(p) for p in the open interval (0, 1); strictly positive and finite."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"probability {p!r} outside open interval (0, 1)")
    return -math.log(p)


def joint_probability(weights: Iterable[float]) -> float:
    """exp(-sum of weights): the product of the encoded probabilities.

    The sum uses ``math.fsum``, which rounds once regardless of order,
    so equal weight multisets always produce the same probability.
    """
    return math.exp(-math.fsum(weights))


def event_weights(tree: FaultTree) -> WeightMap:
    return {eid: to_log_space(p) for eid, p in tree.probabilities().items()}


def tseitin(formula: BooleanFormula) -> tuple[CnfFormula, VarMap]:
    """Equisatisfiable CNF of ``formula`` with the root asserted true.

    Events take variables 1..E in first-appearance order; each gate node
    gets one auxiliary variable (shared nodes are encoded once, keyed by
    object identity).  Every gate emits the full biconditional:

        g <-> AND(c1..ck):  (-g c_i) for each i,  (g -c_1 .. -c_k)
        g <-> OR(c1..ck):   (-g c_1 .. c_k),      (g -c_i) for each i

    followed by a unit clause on the root variable.  Restricted to event
    variables, the models of the result are exactly the satisfying
    assignments of ``formula``.
    """
    cnf, var_map, _ = _tseitin_full(formula)
    return cnf, var_map


def _tseitin_full(
    formula: BooleanFormula,
) -> tuple[CnfFormula, VarMap, dict[int, int]]:
    events = formula_events(formula)
    var_of_event = {eid: i + 1 for i, eid in enumerate(events)}
    next_var = len(events) + 1

    lit_of: dict[int, int] = {}
    gate_var_of: dict[int, int] = {}
    clauses: list[Clause] = []

    stack: list[BooleanFormula] = [formula]
    while stack:
        node = stack[-1]
        key = id(node)
        if key in lit_of:
            stack.pop()
            continue
        if isinstance(node, Var):
            lit_of[key] = var_of_event[node.event]
            stack.pop()
            continue
        pending = [c for c in node.children if id(c) not in lit_of]
        if pending:
            stack.extend(pending)
            continue
        g = next_var
        next_var += 1
        gate_var_of[key] = g
        lit_of[key] = g
        child_lits = [lit_of[id(c)] for c in node.children]
        if isinstance(node, And):
            for c in child_lits:
                clauses.append((-g, c))
            clauses.append(tuple(-c for c in child_lits) + (g,))
        else:
            clauses.append((-g,) + tuple(child_lits))
            for c in child_lits:
                clauses.append((-c, g))
        stack.pop()

    root_var = lit_of[id(formula)]
    clauses.append((root_var,))

    var_map = VarMap(
        var_of_event=var_of_event,
        event_of_var={v: e for e, v in var_of_event.items()},
        aux_vars=frozenset(gate_var_of.values()),
        root_var=root_var,
    )
    cnf = CnfFormula(num_vars=next_var - 1, clauses=tuple(clauses))
    return cnf, var_map, gate_var_of


def build_wcnf(tree: FaultTree) -> WcnfInstance:
    """Compile a fault tree into its weighted partial MaxSAT instance.

    The hard CNF asserts that the failure formula is true (the flipped
    success-tree reading makes this the complement of the all-events-held
    success condition, so no negated leaves are ever needed).  Soft
    clauses prefer each event false at cost ``-ln p``; minimising the
    falsified weight therefore maximises the joint probability of the
    events that do occur.
    """
    formula = to_formula(tree)
    cnf, var_map, gate_var_of = _tseitin_full(formula)
    weights = event_weights(tree)
    soft = tuple(
        (var, weights[eid]) for eid, var in var_map.var_of_event.items()
    )
    return WcnfInstance(
        hard=cnf,
        soft=soft,
        var_map=var_map,
        formula=formula,
        gate_var_of=gate_var_of,
        tree_shaped=_is_tree_shaped(tree),
    )


def _is_tree_shaped(tree: FaultTree) -> bool:
    """True when no node is referenced by more than one parent."""
    seen: set[str] = set()
    for node in tree.nodes.values():
        if isinstance(node, Gate):
            for child in node.children:
                if child in seen:
                    return False
                seen.add(child)
    return True


WCNF_WEIGHT_SCALE = 10**6


def format_wcnf(instance: WcnfInstance) -> str:
    """Render the instance in DIMACS WCNF text form.

    Soft weights are scaled to integers by ``round(w * 10^6)``; the hard
    weight ``top`` is the scaled soft total plus one.  Output is
    deterministic byte for byte: hard clauses in encoding order, then one
    unit soft clause per event variable preferring it false.
    """
    scaled = [(var, round(w * WCNF_WEIGHT_SCALE)) for var, w in instance.soft]
    top = sum(s for _, s in scaled) + 1
    num_clauses = len(instance.hard.clauses) + len(scaled)
    lines = [f"p wcnf {instance.hard.num_vars} {num_clauses} {top}"]
    for clause in instance.hard.clauses:
        lines.append(f"{top} " + " ".join(str(l) for l in clause) + " 0")
    for var, s in scaled:
        lines.append(f"{s} -{var} 0")
    return "\n".join(lines) + "\n"
