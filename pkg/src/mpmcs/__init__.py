"""Maximum probability minimal cut sets for AND/OR fault trees.

The failure formula is compiled to weighted partial MaxSAT (hard: the
top event occurs; soft: each basic event prefers not to, at weight
-ln p) and solved exactly by a small portfolio of search strategies.
The optimal model, after a set-minimality sweep, is the most probable
minimal cut set.
"""

from .encoding import (
    CnfFormula,
    VarMap,
    WcnfInstance,
    build_wcnf,
    event_weights,
    format_wcnf,
    joint_probability,
    to_log_space,
    tseitin,
)
from .fault_tree import (
    And,
    Assignment,
    BasicEvent,
    FaultTree,
    FaultTreeError,
    Gate,
    GateOp,
    Or,
    Var,
    dualize,
    evaluate,
    formula_events,
    parse_fault_tree,
    serialize_fault_tree,
    to_formula,
)
from .generator import GeneratorParams, random_fault_tree
from .oracle import CutSet, enumerate_mcs, oracle_mpmcs
from .solver import (
    MpmcsResult,
    SearchStats,
    Solution,
    SolverConfig,
    Strategy,
    UnsatisfiableError,
    VarOrder,
    WorkerReport,
    compute_mpmcs,
    default_portfolio,
    enumerate_optima,
    extract_mpmcs,
    solve_best_first,
    solve_branch_and_bound,
    solve_portfolio,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Assignment",
    "BasicEvent",
    "CnfFormula",
    "CutSet",
    "FaultTree",
    "FaultTreeError",
    "Gate",
    "GateOp",
    "GeneratorParams",
    "MpmcsResult",
    "Or",
    "SearchStats",
    "Solution",
    "SolverConfig",
    "Strategy",
    "UnsatisfiableError",
    "Var",
    "VarMap",
    "VarOrder",
    "WcnfInstance",
    "WorkerReport",
    "build_wcnf",
    "compute_mpmcs",
    "default_portfolio",
    "dualize",
    "enumerate_mcs",
    "enumerate_optima",
    "evaluate",
    "event_weights",
    "extract_mpmcs",
    "format_wcnf",
    "formula_events",
    "joint_probability",
    "oracle_mpmcs",
    "parse_fault_tree",
    "random_fault_tree",
    "serialize_fault_tree",
    "solve_best_first",
    "solve_branch_and_bound",
    "solve_portfolio",
    "to_formula",
    "to_log_space",
    "tseitin",
    "__version__",
]
