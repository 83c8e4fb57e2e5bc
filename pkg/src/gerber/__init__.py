"""Exact Gerstenhaber and BV-generator machinery for Lie algebroids in a global frame."""

from .algebroid import (
    AlgebroidSpec,
    InvalidSpecError,
    ValidationReport,
    anchor_apply,
    differential,
    lie_derivative,
    schouten_bracket,
    validate,
)
from .bv import (
    GeneratingOperator,
    TopConnection,
    connection_recovery,
    curvature,
    curvature_vs_dsquared,
    d_on_generators,
    derivation_check,
    dsquared,
    extend,
    extend_factored,
    flatness_propagation_check,
    generator_check,
)
from .graded import Form, MultiVector, contract, form_wedge, wedge
from .homology import (
    BettiTable,
    StarOperator,
    betti,
    boundary,
    duality_check,
    dw_contraction_identity,
    star,
    star_diagram_check,
)
from .parsing import ParseError, parse_expression, parse_poly, render
from .scalar import Scalar, partial_derive, scalar_add, scalar_mul

__version__ = "0.1.0"
