"""Python bindings for the qconic C++ library."""

from ._qconic import (
    InvalidParameters,
    NonpositiveDenominator,
    QconicError,
    bounds,
    boundary_points,
    compose,
    div,
    domain_margin,
    elliptic_K,
    extremal_coeffs,
    extremal_eval,
    mul,
    q_bracket,
    q_derivative,
    revert,
    solve_kappa,
    sym_q_bracket,
    sym_q_derivative,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
