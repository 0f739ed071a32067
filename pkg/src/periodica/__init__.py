"""Exact linear and multiplicative periodicity analysis over prime fields."""

__version__ = "0.1.0"

from .algebra import Element, GradedAlgebra, verify_poincare_duality
from .steenrod import SteenrodAction, adem_normal_form, decompose_sq, verify_action
from .periodicity import (
    PeriodicityCertificate,
    SubquotientAlgebra,
    combine_periods,
    find_inducing_element,
    is_irreducible,
    minimum_period,
    subquotient,
)
from .decomposition import decompose, verify_decomposition
from .connectivity import Fact, Scenario, derive, verify_derivation
from .corpus import build, parse_spec

__all__ = [
    "Element",
    "GradedAlgebra",
    "verify_poincare_duality",
    "SteenrodAction",
    "adem_normal_form",
    "decompose_sq",
    "verify_action",
    "PeriodicityCertificate",
    "SubquotientAlgebra",
    "combine_periods",
    "find_inducing_element",
    "is_irreducible",
    "minimum_period",
    "subquotient",
    "decompose",
    "verify_decomposition",
    "Fact",
    "Scenario",
    "derive",
    "verify_derivation",
    "build",
    "parse_spec",
    "__version__",
]
