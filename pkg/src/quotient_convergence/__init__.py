"""Quotient profiles and quotient-convergence of submodular set functions."""
from .core import (
    BudgetError,
    DomainError,
    Partition,
    SetFunction,
    SymmetricSetFunction,
    choquet_inequality_check,
    common_lift,
    common_refinement,
    evaluate,
    ideal_setfunction,
    is_increasing,
    is_submodular,
    quotient,
)
from .metric import DistanceReport, hausdorff, pseudometric_d
from .profile import QuotientSet, contains_vector, profile, quotient_set

__all__ = [
    "BudgetError",
    "DomainError",
    "DistanceReport",
    "Partition",
    "QuotientSet",
    "SetFunction",
    "SymmetricSetFunction",
    "choquet_inequality_check",
    "common_lift",
    "common_refinement",
    "contains_vector",
    "evaluate",
    "hausdorff",
    "ideal_setfunction",
    "is_increasing",
    "is_submodular",
    "profile",
    "pseudometric_d",
    "quotient",
    "quotient_set",
]
