"""Constrained Nevanlinna-Pick interpolation for bounded analytic functions with f'(0) = 0."""

from ._core import (
    Error,
    Interpolant,
    SphereDomain,
    constrained_metric_d1,
    counterexample_scan,
    dist_to_subalgebra,
    family_feasibility,
    kernel_eval,
    minimal_matrix_norm_zero,
    minimal_norm,
    minimal_norm_zero,
    moebius_feasibility,
    phi_sup_norm,
    pseudo_metric_dH,
    run_cli,
    solve,
    two_point_representation,
)

__all__ = [
    "Error",
    "Interpolant",
    "SphereDomain",
    "constrained_metric_d1",
    "counterexample_scan",
    "dist_to_subalgebra",
    "family_feasibility",
    "kernel_eval",
    "minimal_matrix_norm_zero",
    "minimal_norm",
    "minimal_norm_zero",
    "moebius_feasibility",
    "phi_sup_norm",
    "pseudo_metric_dH",
    "run_cli",
    "solve",
    "two_point_representation",
]
