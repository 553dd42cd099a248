"""Faraday-rotator QKD simulator: protocol rounds, attacks and security curves."""

from ._core import (
    binary_entropy,
    collective_bound,
    curves,
    detection_probability,
    detection_probability_from_final_state,
    equator_state,
    eve_error,
    find_eve_optimum,
    find_security_threshold,
    impersonation,
    mutual_info_ab,
    mutual_info_ae,
    pns_leakage,
    run_round,
    simulate,
    state_after_step3,
    state_before_measurement,
)

__all__ = [
    "binary_entropy",
    "collective_bound",
    "curves",
    "detection_probability",
    "detection_probability_from_final_state",
    "equator_state",
    "eve_error",
    "find_eve_optimum",
    "find_security_threshold",
    "impersonation",
    "mutual_info_ab",
    "mutual_info_ae",
    "pns_leakage",
    "run_round",
    "simulate",
    "state_after_step3",
    "state_before_measurement",
]
