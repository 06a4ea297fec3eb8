"""Exact arithmetic for stringy E-functions of log-resolution data."""

from .exact_poly import (
    BivariatePolynomial,
    CycloProduct,
    StringyRational,
    TruncatedBiseries,
    UnivariateTSeries,
    expand_rational,
    series_of_inverse_cyclo,
)
from .hodge import (
    DiamondViolation,
    HodgeDelignePolynomial,
    HodgeDiamond,
    blowup,
    diamond_from_polynomial,
    projective_space,
    scissor,
    validate_smooth_projective,
)
from .resolution import (
    Component,
    ResolutionConfig,
    component_closed_hd,
    config_to_dict,
    convert_strata,
    exceptional_union_hd,
    load_config,
    validate,
)
from .engine import (
    CheckOutcome,
    DecompositionResult,
    DecompositionRow,
    NonnegativityReport,
    NotPolynomial,
    Polynomial,
    StringyResult,
    check_duality,
    check_nonnegativity,
    check_symmetry,
    compute,
    correction_factor_series,
    decompose_coefficients,
    generalized_stringy_hodge_numbers,
    is_polynomial,
    local_contribution,
    stringy_e_closed,
    stringy_e_open,
    stringy_hodge_numbers,
)
from .validation import ConfigFormatError, ConfigValidationError, Finding, ValidationReport

__version__ = "0.1.0"

__all__ = [
    "BivariatePolynomial",
    "CheckOutcome",
    "Component",
    "ConfigFormatError",
    "ConfigValidationError",
    "CycloProduct",
    "DecompositionResult",
    "DecompositionRow",
    "DiamondViolation",
    "Finding",
    "HodgeDelignePolynomial",
    "HodgeDiamond",
    "NonnegativityReport",
    "NotPolynomial",
    "Polynomial",
    "ResolutionConfig",
    "StringyRational",
    "StringyResult",
    "TruncatedBiseries",
    "UnivariateTSeries",
    "ValidationReport",
    "blowup",
    "check_duality",
    "check_nonnegativity",
    "check_symmetry",
    "component_closed_hd",
    "compute",
    "config_to_dict",
    "convert_strata",
    "correction_factor_series",
    "decompose_coefficients",
    "diamond_from_polynomial",
    "exceptional_union_hd",
    "expand_rational",
    "generalized_stringy_hodge_numbers",
    "is_polynomial",
    "load_config",
    "local_contribution",
    "projective_space",
    "scissor",
    "series_of_inverse_cyclo",
    "stringy_e_closed",
    "stringy_e_open",
    "stringy_hodge_numbers",
    "validate",
    "validate_smooth_projective",
]
