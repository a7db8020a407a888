"""Lifting, descent and the case split that turn a van Kampen-Flores witness
into a Tverberg partition of the base points."""
from .descent import DescentResult, lemma1_descent
from .lifting import LiftedInstance, compute_delta_bound, compute_epsilon, compute_mast_heights
from .pipeline import CaseOutcome, ReductionTrace, case_split, run_reduction

__all__ = [
    "CaseOutcome",
    "DescentResult",
    "LiftedInstance",
    "ReductionTrace",
    "case_split",
    "compute_delta_bound",
    "compute_epsilon",
    "compute_mast_heights",
    "lemma1_descent",
    "run_reduction",
]
