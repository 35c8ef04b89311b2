"""Fuzz every solver strategy against the brute-force oracle.

Generates many small random trees, solves each with every strategy and
variable order, and checks that each proven-optimal weight matches the
exhaustive enumeration (relative 1e-9) and that the returned cut set is
a genuine minimal cut.  Exits nonzero if any check fails.
"""

from __future__ import annotations

import argparse
import random
import sys

from mpmcs.encoding import build_wcnf, event_weights
from mpmcs.fault_tree import evaluate, to_formula
from mpmcs.generator import GeneratorParams, random_fault_tree
from mpmcs.oracle import MAX_ORACLE_EVENTS, oracle_mpmcs
from mpmcs.solver import (
    SolverConfig,
    Strategy,
    VarOrder,
    extract_mpmcs,
    solve_best_first,
    solve_branch_and_bound,
)

CONFIGS = [
    SolverConfig(strategy=Strategy.BRANCH_AND_BOUND, var_order=VarOrder.DESCENDING_WEIGHT),
    SolverConfig(strategy=Strategy.BRANCH_AND_BOUND, var_order=VarOrder.ASCENDING_WEIGHT),
    SolverConfig(strategy=Strategy.BEST_FIRST, var_order=VarOrder.ASCENDING_WEIGHT),
    SolverConfig(strategy=Strategy.BEST_FIRST, var_order=VarOrder.DESCENDING_WEIGHT),
]


def _is_minimal_cut(formula, events) -> bool:
    if not evaluate(formula, {e: True for e in events}):
        return False
    return not any(
        evaluate(formula, {x: True for x in events - {e}}) for e in events
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trees", type=int, default=500, help="number of trees")
    parser.add_argument(
        "--max-nodes", type=int, default=13,
        help="node-count ceiling per tree (default %(default)s)",
    )
    parser.add_argument("--seed", type=int, default=0, help="base seed")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.trees < 1 or args.max_nodes < 1:
        print("--trees and --max-nodes must be positive", file=sys.stderr)
        return 1

    mismatches = 0
    for i in range(args.trees):
        seed = args.seed + i
        nodes = random.Random(seed).randint(1, args.max_nodes)
        tree = random_fault_tree(GeneratorParams(nodes=nodes, seed=seed))
        if len(tree.event_ids) > MAX_ORACLE_EVENTS:
            continue
        expected = oracle_mpmcs(tree)
        instance = build_wcnf(tree)
        weights = event_weights(tree)
        formula = to_formula(tree)
        for config in CONFIGS:
            if config.strategy is Strategy.BEST_FIRST:
                solution = solve_best_first(instance, config)
            else:
                solution = solve_branch_and_bound(instance, config)
            if not solution.proven:
                mismatches += 1
                print(f"seed {seed} {config.solver_id}: optimality not proven")
                continue
            result = extract_mpmcs(solution, instance, weights)
            tol = 1e-9 * max(1.0, abs(expected.log_weight))
            if abs(result.log_weight - expected.log_weight) > tol:
                mismatches += 1
                print(
                    f"seed {seed} {config.solver_id}: weight {result.log_weight!r}"
                    f" != oracle {expected.log_weight!r}"
                )
            if not _is_minimal_cut(formula, result.cut_set):
                mismatches += 1
                print(
                    f"seed {seed} {config.solver_id}: cut "
                    f"{sorted(result.cut_set)} is not minimal"
                )

    print(f"checked {args.trees} trees x {len(CONFIGS)} configs: {mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
