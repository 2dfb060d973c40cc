# SPDX-License-Identifier: Apache-2.0
"""Separability probabilities of two-qubit and two-rebit states."""

from ._sepvol import (
    DomainError,
    Error,
    Field,
    MCEstimate,
    Measure,
    NoConvergence,
    QuadResult,
    Unsupported,
    chi1_tilde,
    chi1_tilde_quad,
    chi_mc,
    defect,
    dilog,
    elliptic_E,
    elliptic_K,
    is_ppt,
    psep_mc,
    psep_real_hs,
    psep_sqrtx_real,
    run_cli,
    section5_volumes,
    separable_fraction,
    sqrtx_weight,
)

__all__ = [
    "DomainError",
    "Error",
    "Field",
    "MCEstimate",
    "Measure",
    "NoConvergence",
    "QuadResult",
    "Unsupported",
    "chi1_tilde",
    "chi1_tilde_quad",
    "chi_mc",
    "defect",
    "dilog",
    "elliptic_E",
    "elliptic_K",
    "is_ppt",
    "psep_mc",
    "psep_real_hs",
    "psep_sqrtx_real",
    "run_cli",
    "section5_volumes",
    "separable_fraction",
    "sqrtx_weight",
]
