"""Exact mean-payoff games on one-clock binary-priced timed automata."""

from .bra import build_bra, export_dot
from .errors import MpgtaError
from .ptga import load_ptga, parse_ptga, validate
from .solver import decide_mpg, integralize_and_solve, value_at

__version__ = "0.1.0"

__all__ = [
    "MpgtaError", "build_bra", "decide_mpg", "export_dot", "integralize_and_solve",
    "load_ptga", "parse_ptga", "validate", "value_at",
]
