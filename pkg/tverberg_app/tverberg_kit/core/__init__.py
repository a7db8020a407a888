"""Convenience re-exports for tverberg_kit.core.

Callers can import the exact kernel from `tverberg_kit.core` without
depending on the module split, which may be refactored.
"""
from .convexity import (
    CandidateTriple,
    IntersectionCertificate,
    caratheodory_reduce,
    carrier_face,
    hull_membership,
    is_vertex,
    linf_distance_lower,
    min_last_coordinate,
    triple_intersection,
    verify_certificate,
)
from .errors import TverbergKitError
from .lp import LinearProgram, LPOutcome, LPStatus, solve, verify_outcome
from .rational import PointConfig, affine_dim, is_general_position, rank

__all__ = [
    "CandidateTriple",
    "IntersectionCertificate",
    "LPOutcome",
    "LPStatus",
    "LinearProgram",
    "PointConfig",
    "TverbergKitError",
    "affine_dim",
    "caratheodory_reduce",
    "carrier_face",
    "hull_membership",
    "is_general_position",
    "is_vertex",
    "linf_distance_lower",
    "min_last_coordinate",
    "rank",
    "solve",
    "triple_intersection",
    "verify_certificate",
    "verify_outcome",
]
