"""Python bindings for the daipp solver library."""

from ._core import (
    DomainError,
    Error,
    NonconvergenceError,
    ParameterError,
    QpInstance,
    SolverError,
    check,
    generate_qp,
    map_tolerances,
    outer_coefficients,
    project_simplex,
    solve,
    to_csv,
)

__all__ = [
    "DomainError",
    "Error",
    "NonconvergenceError",
    "ParameterError",
    "QpInstance",
    "SolverError",
    "check",
    "generate_qp",
    "map_tolerances",
    "outer_coefficients",
    "project_simplex",
    "solve",
    "to_csv",
]
