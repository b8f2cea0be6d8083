"""Exact finite-dimensional Hopf algebroids, covariant calculi and Kähler-type structures over ℚ(i)."""

from .algebra import Algebra, StarAlgebra, function_algebra, ground_field, group_algebra, matrix_algebra
from .calculus import (DGA, CovariantCalculus, State, compute_h0, eq434_check, finite_set_bialgebroid,
                       groupoid_calculus, invariant_forms, universal_calculus, verify_covariant_calculus,
                       verify_finite_set)
from .constructors import connes_moscovici, convolution_algebroid, enveloping_algebroid
from .groupoid import FiniteGroupoid, groupoid_preset
from .hopf import (HopfAlgebroid, LeftBialgebroid, RightBialgebroid, StarHopfAlgebroid, antipode_uniqueness,
                   counit_uniqueness, derived_identities, verify_hopf, verify_left_bialgebroid,
                   verify_right_bialgebroid, verify_star)
from .kahler import (Bigrading, hermitian_data, kahler_suite, kodaira_thurston, laplacian_fixture, toy_kahler,
                     verify_hermitian)
from .linalg import FinSpace, LinMap, Subspace
from .presets import build_preset
from .report import CheckReport
from .scalar import I, ONE, ZERO, Scalar, sc

__version__ = "0.1.0"

__all__ = [
    "Algebra", "StarAlgebra", "function_algebra", "ground_field", "group_algebra", "matrix_algebra",
    "DGA", "CovariantCalculus", "State", "compute_h0", "eq434_check", "finite_set_bialgebroid",
    "groupoid_calculus", "invariant_forms", "universal_calculus", "verify_covariant_calculus", "verify_finite_set",
    "connes_moscovici", "convolution_algebroid", "enveloping_algebroid", "FiniteGroupoid", "groupoid_preset",
    "HopfAlgebroid", "LeftBialgebroid", "RightBialgebroid", "StarHopfAlgebroid", "antipode_uniqueness",
    "counit_uniqueness", "derived_identities", "verify_hopf", "verify_left_bialgebroid",
    "verify_right_bialgebroid", "verify_star", "Bigrading", "hermitian_data", "kahler_suite", "kodaira_thurston",
    "laplacian_fixture", "toy_kahler", "verify_hermitian", "FinSpace", "LinMap", "Subspace", "build_preset",
    "CheckReport", "I", "ONE", "ZERO", "Scalar", "sc",
]
