"""Spectral and Monte Carlo solvers for fractional dynamic boundary conditions."""

from ._core import (
    ConfigError,
    DomainError,
    MCEstimate,
    PreconditionError,
    caputo_l1,
    eigenvalues,
    m_phi,
    ml_e,
    phi,
    relaxation_residual,
    run_cli,
    sample_inverse_stable,
    sample_stable,
    simulate,
    solve,
    spectral_condition,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "MCEstimate",
    "PreconditionError",
    "caputo_l1",
    "eigenvalues",
    "m_phi",
    "ml_e",
    "phi",
    "relaxation_residual",
    "run_cli",
    "sample_inverse_stable",
    "sample_stable",
    "simulate",
    "solve",
    "spectral_condition",
]

__version__ = "0.1.0"
