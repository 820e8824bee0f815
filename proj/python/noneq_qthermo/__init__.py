"""Open-system dynamics and thermodynamics of a damped bosonic mode."""

from ._core import (
    BathSpec,
    ConfigError,
    DomainError,
    Error,
    InconsistencyError,
    NumericalError,
    TruncationError,
    bose_occupation,
    energy_entropy,
    figure,
    g_kernel,
    g_tilde_kernel,
    g_tilde_series,
    parse_config,
    run,
    series_columns,
    simulate,
    solve_propagator,
    spectral_density,
    von_neumann_gaussian,
)

__all__ = [
    "BathSpec",
    "ConfigError",
    "DomainError",
    "Error",
    "InconsistencyError",
    "NumericalError",
    "TruncationError",
    "bose_occupation",
    "energy_entropy",
    "figure",
    "g_kernel",
    "g_tilde_kernel",
    "g_tilde_series",
    "parse_config",
    "run",
    "series_columns",
    "simulate",
    "solve_propagator",
    "spectral_density",
    "von_neumann_gaussian",
]
