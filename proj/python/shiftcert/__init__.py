"""Robustness of counterfactual explanations under plausible model shifts."""

from ._core import (
    DECISION_THRESHOLD,
    DimensionError,
    DomainError,
    Error,
    Network,
    ParseError,
    apds,
    check_equivalence,
    confidence_of,
    enumerate,
    fig2_network,
    fig5_network,
    generate_robust_cfx,
    lof_score,
    one_weight_network,
    provable_delta,
    realizations,
    sample_size,
)

__all__ = [
    "DECISION_THRESHOLD",
    "DimensionError",
    "DomainError",
    "Error",
    "Network",
    "ParseError",
    "apds",
    "check_equivalence",
    "confidence_of",
    "enumerate",
    "fig2_network",
    "fig5_network",
    "generate_robust_cfx",
    "lof_score",
    "one_weight_network",
    "provable_delta",
    "realizations",
    "sample_size",
]
