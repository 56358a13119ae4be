"""Numerical complex interpolation of weighted sequence spaces."""

from ._core import (
    ConfigError,
    Couple,
    DimensionMismatch,
    DomainError,
    WeightedSpace,
    calderon_exponent,
    closed_form_norm,
    fourier_coefficients,
    identity_norm,
    interpolated_norm,
    k_functional,
    lions_peetre,
    list_suites,
    martin_constant,
    random_polynomial_value,
    run_suite,
    synthesize,
    vallee_poussin_window,
)

__all__ = [name for name in dir() if not name.startswith("_")]
