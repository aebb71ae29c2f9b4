"""Threshold energies, interpolation coefficients and positivity checks for
the two-dimensional discrete Laplacian."""

from ._core import (
    AmbiguousNullspaceError,
    NoRelationError,
    NoRootError,
    OutOfBranchError,
    UnknownSourceError,
    band_sequence,
    band_window,
    branch_step,
    cheb_t,
    cheb_u,
    cheb_u_deriv,
    chain_points,
    check_integrity,
    closure_residual,
    evaluate_g_sum,
    g_symbol,
    g_symbol_deriv,
    load_dataset,
    minimal_polynomial,
    rate_fit,
    refine_endpoint,
    sigma_verdicts,
    solve_band_endpoint,
    solve_coefficients,
    validate_sigma,
)

__all__ = [
    "AmbiguousNullspaceError",
    "NoRelationError",
    "NoRootError",
    "OutOfBranchError",
    "UnknownSourceError",
    "band_sequence",
    "band_window",
    "branch_step",
    "cheb_t",
    "cheb_u",
    "cheb_u_deriv",
    "chain_points",
    "check_integrity",
    "closure_residual",
    "evaluate_g_sum",
    "g_symbol",
    "g_symbol_deriv",
    "load_dataset",
    "minimal_polynomial",
    "rate_fit",
    "refine_endpoint",
    "sigma_verdicts",
    "solve_band_endpoint",
    "solve_coefficients",
    "validate_sigma",
]
