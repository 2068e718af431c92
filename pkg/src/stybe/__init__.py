"""Exact workbench for set-theoretic Yang-Baxter and reflection equations."""

__version__ = "0.1.0"

from .algebra import (GroupTable, NearBrace, RingTable, StructureReport,
                      brace_from_radical_ring, enumerate_near_braces,
                      verify_structure)
from .poly import Poly
from .polymat import PolyMatrix
from .reflection import ReflectionMap, enumerate_reflections, verify_reflection
from .rmatrix import (LinearSolution, baxterize, build_and_check_twist,
                      check_basic_properties, linearize)
from .qalgebra import (DressParams, SeriesOperator, check_reflection_algebra,
                       check_reflection_equation, check_rtt_series,
                       dress_reflection, fundamental_l_series)
from .ybe import (SetSolution, diagnostics, enumerate_solutions,
                  reconstruct_addition, solution_from_structure, verify_braid)

__all__ = [
    "GroupTable", "NearBrace", "RingTable", "StructureReport",
    "brace_from_radical_ring", "enumerate_near_braces", "verify_structure",
    "Poly", "PolyMatrix",
    "ReflectionMap", "enumerate_reflections", "verify_reflection",
    "LinearSolution", "baxterize", "build_and_check_twist",
    "check_basic_properties", "linearize",
    "DressParams", "SeriesOperator", "check_reflection_algebra",
    "check_reflection_equation", "check_rtt_series", "dress_reflection",
    "fundamental_l_series",
    "SetSolution", "diagnostics", "enumerate_solutions",
    "reconstruct_addition", "solution_from_structure", "verify_braid",
]
