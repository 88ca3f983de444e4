"""Exact Lie-algebra structure, graded rationality checks, series solving."""

from .rootsys import CartanElement, RootSystem, SimpleType, build, is_admissible_level
from .liealg import ChevalleyTable, LieElement, build_chevalley
from .grading import DynkinGrading, Sl2Triple, complete_sl2, grade, grade_by_weights
from .orbits import (
    EVEN_OR_EXTERNAL,
    ClassicalPartition,
    OrbitRecord,
    build_classical,
    load_records,
    lookup_exceptional,
)
from .ratcheck import (
    NOT_FOUND,
    ConditionVerdict,
    SearchConfig,
    check_classical,
    check_record,
    exact_condition,
    fast_condition,
    search_v,
    verify_good_even_shortcut,
    verify_self_contragredient,
)

__version__ = "0.1.0"

__all__ = [
    "CartanElement",
    "ChevalleyTable",
    "ClassicalPartition",
    "ConditionVerdict",
    "DynkinGrading",
    "EVEN_OR_EXTERNAL",
    "LieElement",
    "NOT_FOUND",
    "OrbitRecord",
    "RootSystem",
    "SearchConfig",
    "SimpleType",
    "Sl2Triple",
    "build",
    "build_chevalley",
    "build_classical",
    "check_classical",
    "check_record",
    "complete_sl2",
    "exact_condition",
    "fast_condition",
    "grade",
    "grade_by_weights",
    "is_admissible_level",
    "load_records",
    "lookup_exceptional",
    "search_v",
    "verify_good_even_shortcut",
    "verify_self_contragredient",
    "__version__",
]
