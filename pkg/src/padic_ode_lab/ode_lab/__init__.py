"""Linear ODEs with polynomial coefficients for factorial series."""

from .catalog import EquationCatalogEntry, build_entries, catalog, eq_7_4_factors
from .construct import (
    ConstructionError,
    combine,
    derive_first_order,
    first_to_second,
    prop1_chain,
    prop1_iterate,
    prop1_step,
    prop2_shift,
    prop2_shift_form,
    rederive_phi_alpha_beta,
    reduce_common_factor,
)
from .equations import (
    FirstOrderForm,
    LinearODE,
    VerificationResult,
    apply,
    nonlinear_product_check,
    verify_formal,
)
from .lagrangian import LogAugmentedCoefficient, QuadraticLagrangian, euler_lagrange, example_6_5, load_lagrangian
from .solution_space import SolutionSpace, formal_solution_space, recurrence
from .w1 import W1Report, reciprocal_transform, verify_w1, w1_pointwise

__all__ = [
    "ConstructionError",
    "EquationCatalogEntry",
    "FirstOrderForm",
    "LinearODE",
    "LogAugmentedCoefficient",
    "QuadraticLagrangian",
    "SolutionSpace",
    "VerificationResult",
    "W1Report",
    "apply",
    "build_entries",
    "catalog",
    "combine",
    "derive_first_order",
    "eq_7_4_factors",
    "euler_lagrange",
    "example_6_5",
    "first_to_second",
    "formal_solution_space",
    "load_lagrangian",
    "nonlinear_product_check",
    "prop1_chain",
    "prop1_iterate",
    "prop1_step",
    "prop2_shift",
    "prop2_shift_form",
    "reciprocal_transform",
    "recurrence",
    "rederive_phi_alpha_beta",
    "reduce_common_factor",
    "verify_formal",
    "verify_w1",
    "w1_pointwise",
]
