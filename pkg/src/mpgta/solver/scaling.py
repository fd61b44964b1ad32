"""Integral-payoff scaling and the top-level solve.

Scaling every constant, the bound and every price by ``L`` multiplies all
rewards, and hence all values, by ``L``.  A suitable ``L`` makes every gain
of the scaled graph an integer, which keeps biases simple with integral
offsets.  Two recipes choose the first ``L``:

``cycles``  lcm of the simple-cycle lengths of the unscaled corner graph.
``gains``   lcm of the denominators of the optimal gains of the unscaled
            corner graph, solved with fractional gains allowed.

Either way a fractional gain after scaling multiplies ``L`` by its
denominator and the solve is retried.
"""

import logging
import math

import networkx as nx

from ..bra import build_bra
from ..errors import NonIntegralGain, ScaleEscalationExceeded, ValidationError
from ..ptga import scale_constants, validate
from .certify import value_at, verify_opt
from .core import solve_two_player

log = logging.getLogger(__name__)

CYCLES = "cycles"
GAINS = "gains"
RECIPES = (CYCLES, GAINS)

DEFAULT_MAX_SCALE = 60
DEFAULT_MAX_ESCALATIONS = 4


def graph_digraph(g):
    d = nx.DiGraph()
    d.add_nodes_from(range(len(g)))
    d.add_edges_from((v, m.target) for v in range(len(g)) for m in g.moves[v])
    return d


def cycle_length_scale(g, limit=None):
    """lcm of the lengths of all simple cycles of ``g`` (1 when acyclic).

    Enumeration stops early once the lcm exceeds ``limit``.
    """
    scale = 1
    for cyc in nx.simple_cycles(graph_digraph(g)):
        scale = math.lcm(scale, len(cyc))
        if limit is not None and scale > limit:
            break
    return scale


def gain_denominator_scale(g, max_iters=100_000):
    sol = solve_two_player(g, max_iters=max_iters, require_integral=False)
    return math.lcm(1, *(x.denominator for x in sol.gain))


def initial_scale(g, recipe, max_scale=None, max_iters=100_000):
    if recipe == CYCLES:
        return cycle_length_scale(g, max_scale)
    if recipe == GAINS:
        return gain_denominator_scale(g, max_iters)
    raise ValueError(f"unknown scale recipe {recipe!r}")


def integralize_and_solve(ptga, start=None, recipe=GAINS, max_scale=DEFAULT_MAX_SCALE,
                          max_escalations=DEFAULT_MAX_ESCALATIONS, max_iters=100_000, scale=None):
    """Scale ``ptga`` until strategy improvement ends with integral gains.

    ``scale`` overrides the recipe's first scale.  The returned solution
    lives on the scaled graph (with interior classes), carries its scale and
    a certificate from ``verify_opt``.
    """
    report = validate(ptga)
    if not report.ok:
        raise ValidationError(report)
    start = ptga.initial if start is None else start
    base = build_bra(ptga, start)
    if scale is None:
        scale = initial_scale(base, recipe, max_scale, max_iters)
        log.info("initial scale %d (%s recipe)", scale, recipe)
    offending = None
    for attempt in range(max_escalations + 1):
        if scale > max_scale:
            raise ScaleEscalationExceeded(
                f"scale {scale} exceeds the limit {max_scale}",
                limit=max_scale, scale=scale, gain=offending)
        g = build_bra(scale_constants(ptga, scale), start, interior=True)
        try:
            sol = solve_two_player(g, max_iters=max_iters, require_integral=True)
        except NonIntegralGain as exc:
            offending = exc.value
            log.info("scale %d leaves gain %s; escalating", scale, exc.value)
            scale *= exc.value.denominator
            continue
        sol.scale = scale
        sol.certificate = verify_opt(g, sol.gain, sol.bias)
        sol.escalations = attempt
        return sol
    raise ScaleEscalationExceeded(
        f"no integral solution after {max_escalations} escalations",
        limit=max_scale, scale=scale, gain=offending)


def decide_mpg(ptga, location, r, **options):
    """True iff the value at ``(location, 0)`` is strictly below ``r``."""
    sol = integralize_and_solve(ptga, location, **options)
    return value_at(sol, ptga, location, 0) < r
