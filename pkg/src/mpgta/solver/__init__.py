"""Strategy improvement, scaling, certification and the brute-force oracle."""

from .certify import CertificateReport, Violation, bias_at, check_lift, value_at, verify_opt
from .core import (
    GainBiasSolution,
    eval_zero_player,
    improve_max,
    improve_min,
    solve_two_player,
)
from .export import solution_to_dict, solution_to_json
from .oracle import oracle_min_max
from .scaling import cycle_length_scale, decide_mpg, integralize_and_solve

__all__ = [
    "CertificateReport", "GainBiasSolution", "Violation", "bias_at", "check_lift",
    "cycle_length_scale", "decide_mpg", "eval_zero_player", "improve_max", "improve_min",
    "integralize_and_solve", "oracle_min_max", "solution_to_dict", "solution_to_json",
    "solve_two_player", "value_at", "verify_opt",
]
