"""Exact symbolic engine for abelian twists of Newton-Hooke and Galilei symmetry."""

from .coefficients import (
    FLAT,
    HYPERBOLIC,
    TRIGONOMETRIC,
    GaussianRational,
    I,
    ModeError,
    ScalarField,
    cosh_like,
    sinh_like,
)
from .contraction import ContractedPair, contract_both_signs, contract_table
from .generators import (
    GALILEI,
    NH_MINUS,
    NH_PLUS,
    AlgebraKind,
    DiffOperator,
    bracket,
    commutator,
    standard_rep,
    verify_algebra,
)
from .limits import DivergenceError, LimitResult, tau_limit, tau_limit_expr
from .printing import print_json, print_latex, print_text
from .spacetime import SpaceExpr
from .symmetry import check_h_is_dfdt, classify_unbroken, covariance_residual
from .syntax import ParseError, parse_expr, parse_field
from .twist import (
    TwistBivector,
    check_cocycle,
    classify_nc_type,
    commutator_table,
    kappa_factor,
    noncommutativity,
    preset,
    star_commutator,
    star_product,
    twist_from_text,
)

__version__ = "0.1.0"
