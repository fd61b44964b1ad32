"""Exact checks of the optimality equations, on the graph and on the timed game.

``verify_opt`` checks the equations over the boundary region graph.  On an
open region a bias equation is checked at both closure endpoints: simple
functions are affine, so agreement and order at the endpoints give them on
the whole region.  ``check_lift`` checks the equations of the timed game at
concrete configurations, taking the infimum or supremum over every delay.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import UnreachableStateClass
from ..ptga import MAX
from ..regions import Region, future_regions, region_of
from ..simplefn import evaluate
from .core import bias_step

GAIN = "gain"
BIAS = "bias"
CLASS = "class"


@dataclass(frozen=True)
class Violation:
    vertex: object
    equation: str
    lhs: object
    rhs: object
    action: object = None

    def to_dict(self):
        return {"vertex": str(self.vertex), "equation": self.equation,
                "lhs": str(self.lhs), "rhs": str(self.rhs),
                "action": None if self.action is None else str(self.action)}


@dataclass
class CertificateReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def _points(z):
    return [Fraction(z.lower)] if z.thin else [Fraction(z.lower), Fraction(z.upper)]


def verify_opt(g, G, B):
    """Report every violated gain or bias equation of ``(G, B)`` on ``g``."""
    report = CertificateReport()
    for v in range(len(g)):
        moves = g.moves[v]
        is_max = g.is_max(v)
        pick = max if is_max else min
        best_gain = pick(G[m.target] for m in moves)
        if best_gain != G[v]:
            arg = next(m for m in moves if G[m.target] == best_gain)
            report.violations.append(Violation(g.states[v], GAIN, G[v], best_gain, arg.action))
            continue
        pts = _points(g.val_region(v))
        lhs = [evaluate(B[v], x) for x in pts]
        attained = False
        for m in moves:
            if G[m.target] != G[v]:
                continue
            cand = bias_step(m, G[v], B[m.target])
            rhs = [evaluate(cand, x) for x in pts]
            if rhs == lhs:
                attained = True
            elif any((r > l) if is_max else (r < l) for l, r in zip(lhs, rhs)):
                report.violations.append(Violation(g.states[v], BIAS, B[v], cand, m.action))
                break
        else:
            if not attained:
                report.violations.append(Violation(g.states[v], BIAS, B[v], None))
    return report


def lifted_vertex(g, location, x):
    """Vertex that holds configuration ``(location, x)`` of the graph's automaton."""
    z = region_of(x, g.ptga.k_bound)
    return g.vertex(location, z, z)


def _delay_candidates(ptga, location, x):
    """Per edge and future region: delays bounding the region and the landing point.

    Yields ``(edge, region, landing_region, [(t, landing_valuation), ...])``;
    an open region contributes both closure endpoints, a point region its
    single delay.
    """
    k = ptga.k_bound
    inv = ptga.location(location).invariant.region_span(k)
    if inv is None:
        return
    here = region_of(x, k)
    for e in ptga.edges_from(location):
        guard = e.guard.region_span(k)
        tinv = ptga.location(e.target).invariant.region_span(k)
        if guard is None or tinv is None:
            continue
        for z in future_regions(here):
            if z.index > inv[1]:
                break
            if not guard[0] <= z.index <= guard[1]:
                continue
            landing = 0 if e.resets else z.index
            if not tinv[0] <= landing <= tinv[1]:
                continue
            if z.thin:
                delays = [z.lower - x]
            else:
                delays = [max(Fraction(0), z.lower - x), z.upper - x]
            land = Region.point(0, k) if e.resets else z
            yield e, z, land, [(t, Fraction(0) if e.resets else x + t) for t in delays]


def check_lift(sol, ptga, samples):
    """Check the timed-game optimality equations at sampled configurations.

    ``samples`` are ``(location, valuation)`` pairs of the unscaled
    automaton ``ptga``.  Every edge and future region contributes the
    infimum (Min) or supremum (Max) over its delays, attained in the limit
    at a closure endpoint since reward and bias are affine in the delay.
    """
    g = sol.graph
    sp = g.ptga
    report = CertificateReport()
    for location, v in samples:
        x = Fraction(v) * sol.scale
        u = lifted_vertex(g, location, x)
        if u is None:
            report.violations.append(Violation((location, v), CLASS, None, None))
            continue
        gain, bias = sol.gain[u], evaluate(sol.bias[u], x)
        is_max = ptga.location(location).owner == MAX
        pick = max if is_max else min
        rate = sp.location(location).rate
        options = []
        for e, z, land, ends in _delay_candidates(sp, location, x):
            # Closure endpoints of an open region use that region's class.
            w = g.vertex(e.target, land, land)
            if w is None:
                report.violations.append(Violation((e.target, str(land)), CLASS, None, None, e.action))
                continue
            phi = [e.price + rate * t - gain + evaluate(sol.bias[w], y) for t, y in ends]
            options.append((sol.gain[w], pick(phi), (e.action, str(z))))
        if not options:
            continue
        best_gain = pick(o[0] for o in options)
        if best_gain != gain:
            report.violations.append(Violation((location, v), GAIN, gain, best_gain))
            continue
        best_bias = pick(o[1] for o in options if o[0] == gain)
        if best_bias != bias:
            arg = next(o[2] for o in options if o[0] == gain and o[1] == best_bias)
            report.violations.append(Violation((location, v), BIAS, bias, best_bias, arg))
    return report


def value_at(sol, ptga, location, v):
    """Value of configuration ``(location, v)`` of the unscaled automaton."""
    v = Fraction(v)
    if not ptga.has_location(location) or not ptga.location(location).invariant.holds(v):
        raise UnreachableStateClass(f"({location}, {v}) violates the location invariant",
                                    location=location, valuation=v)
    x = v * sol.scale
    u = None
    if x <= sol.graph.ptga.k_bound:
        u = lifted_vertex(sol.graph, location, x)
    if u is None:
        raise UnreachableStateClass(f"no solved vertex class holds ({location}, {v})",
                                    location=location, valuation=v)
    return sol.gain[u] / sol.scale


def bias_at(sol, location, v):
    x = Fraction(v) * sol.scale
    u = lifted_vertex(sol.graph, location, x)
    if u is None:
        raise UnreachableStateClass(f"no solved vertex class holds ({location}, {v})",
                                    location=location, valuation=v)
    return evaluate(sol.bias[u], x)


def lifted_classes(sol):
    """Vertices standing for configurations, i.e. with ``[v]`` equal to the region."""
    g = sol.graph
    return [u for u in range(len(g)) if g.states[u].val_region == g.states[u].region]


def sample_configurations(sol, rng, count, denominator=97):
    """Random ``(location, valuation)`` pairs of the unscaled automaton inside solved classes."""
    g = sol.graph
    classes = lifted_classes(sol)
    out = []
    for _ in range(count):
        u = rng.choice(classes)
        z = g.states[u].region
        x = Fraction(z.lower)
        if z.thick:
            x += Fraction(rng.randint(1, denominator - 1), denominator)
        out.append((g.states[u].location, x / sol.scale))
    return out
