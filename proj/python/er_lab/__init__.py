"""Exact optimisation and certification tools for colour patterns.

Patterns, graphs and results use the same JSON documents as the er-lab CLI,
passed here as plain dicts.
"""

from ._core import (
    SCHEMA,
    ErLabError,
    canonical_pattern,
    capacity,
    check_extension,
    constraint_validity_scan,
    count_colourings,
    extremal_search,
    in_capacity,
    is_feasible,
    known_construction,
    numcheck,
    optimize_weights,
    q_value,
    sandwich_certificate,
    solve_lp,
    solve_q2,
    symmetrise,
    validate_nocap,
    verify_candidate,
)

__all__ = [
    "SCHEMA",
    "ErLabError",
    "canonical_pattern",
    "capacity",
    "check_extension",
    "constraint_validity_scan",
    "count_colourings",
    "extremal_search",
    "in_capacity",
    "is_feasible",
    "known_construction",
    "numcheck",
    "optimize_weights",
    "q_value",
    "sandwich_certificate",
    "solve_lp",
    "solve_q2",
    "symmetrise",
    "validate_nocap",
    "verify_candidate",
]

__version__ = "0.1.0"
