"""Exact point counts for two-equation staircase varieties over finite fields."""

__version__ = "0.1.0"

from .affine_count import HyperplaneSpec, hyperplane_count, iterate_hyperplane_points
from .congruence import CongruenceSystem, count_solutions
from .document import parse, render
from .errors import (
    BudgetExceeded,
    InputError,
    InvalidSystem,
    ParseError,
    VarcountError,
)
from .ffield import FiniteField, find_primitive_element, make_field
from .intlinalg import SmithDecomposition, snf, verify_decomposition
from .oracle import OracleConfig, brute_force_count
from .theorem import CountBreakdown, count_points, sun_special_case
from .variety import PolySystem, Polynomial, StaircaseSystem, example_41, make_system

__all__ = [
    "BudgetExceeded",
    "CongruenceSystem",
    "CountBreakdown",
    "FiniteField",
    "HyperplaneSpec",
    "InputError",
    "InvalidSystem",
    "OracleConfig",
    "ParseError",
    "PolySystem",
    "Polynomial",
    "SmithDecomposition",
    "StaircaseSystem",
    "VarcountError",
    "brute_force_count",
    "count_points",
    "count_solutions",
    "example_41",
    "find_primitive_element",
    "hyperplane_count",
    "iterate_hyperplane_points",
    "make_field",
    "make_system",
    "parse",
    "render",
    "snf",
    "sun_special_case",
    "verify_decomposition",
]
