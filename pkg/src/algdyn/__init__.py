"""algdyn: dynamical invariants of algebraic Z^d-actions.

A finite presentation matrix A over the Laurent polynomial ring
Z[u1^{+-1}, ..., ud^{+-1}] determines a compact abelian group with a
Z^d-action by automorphisms.  This package computes the standard
invariants of that action directly from A: determinantal ideals and
their gcd, topological entropy via Mahler measure, expansiveness,
periodic point counts and growth, mixing and ergodicity checks, and
Fitting ideals of free resolutions.
"""
from .laurent import LaurentPoly, TorusPoint, exact_div
from .polyio import parse_poly, serialize_poly, load_problem
from .gcdring import gcd, gcd_list, multiplicity
from .presentation import PresentationMatrix, FreeSubmoduleError
from .mahler import MahlerValue, entropy, mahler, mahler_univariate, mahler_quadrature, zero_mahler_test
from .expansive import expansive, Expansive, NotExpansive, Undecided, torus_min_estimate
from .squaredyn import Lattice, PeriodicCount, fix_count, block_matrix_oracle, growth_rate, mixing_check, ergodic_check
from .fitting import FreeResolution, CompositionNonzeroError, fitting_ideal, principal_candidate_check, kernel_check
from .report import ReportConfig, build_report

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "TorusPoint", "exact_div",
    "parse_poly", "serialize_poly", "load_problem",
    "gcd", "gcd_list", "multiplicity",
    "PresentationMatrix", "FreeSubmoduleError",
    "MahlerValue", "entropy", "mahler", "mahler_univariate", "mahler_quadrature", "zero_mahler_test",
    "expansive", "Expansive", "NotExpansive", "Undecided", "torus_min_estimate",
    "Lattice", "PeriodicCount", "fix_count", "block_matrix_oracle", "growth_rate",
    "mixing_check", "ergodic_check",
    "FreeResolution", "CompositionNonzeroError", "fitting_ideal",
    "principal_candidate_check", "kernel_check",
    "ReportConfig", "build_report",
    "__version__",
]
