"""Gain/bias strategy improvement on a boundary region graph.

Strategies are regionally constant positional strategies (RCPS): one move
index per vertex of the player, where a vertex is a ``(location, region of
the valuation, region)`` class.  ``eval_zero_player`` solves the optimality
equations for a fixed profile, the two ``improve_*`` functions perform one
myopic improvement step, and ``solve_two_player`` nests them.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..errors import IterationCapExceeded, NonIntegralGain, NonPointCycleVertex
from ..simplefn import CONST, ZERO, Direction, Ordering, compare_on_region, evaluate, step_compose


@dataclass
class GainBiasSolution:
    graph: object
    gain: list
    bias: list
    scale: int = 1
    min_strategy: dict = field(default_factory=dict)
    max_strategy: dict = field(default_factory=dict)
    iterations: int = 0
    certificate: object = None
    escalations: int = 0

    def value(self, v):
        """Gain of vertex ``v`` in units of the unscaled automaton."""
        return self.gain[v] / self.scale

    @property
    def strategy(self):
        return {**self.min_strategy, **self.max_strategy}


def initial_strategy(g, maximizer):
    return {v: 0 for v in range(len(g)) if g.is_max(v) == maximizer}


def bias_step(move, gain, next_bias):
    """Bias of the source of ``move`` given its gain and the target's bias."""
    return step_compose(move.rate, move.price, move.action.b, move.reset, gain,
                        next_bias, hold=move.hold)


def _cycles(succ):
    """Cycles of a functional graph, each listed from its smallest vertex."""
    state = [0] * len(succ)
    cycles = []
    for root in range(len(succ)):
        if state[root]:
            continue
        path = []
        v = root
        while not state[v]:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:
            cyc = path[path.index(v):]
            k = cyc.index(min(cyc))
            cycles.append(cyc[k:] + cyc[:k])
        for u in path:
            state[u] = 2
    return cycles


def eval_zero_player(g, mu, chi, require_integral=True):
    """Solve the optimality equations of the game with both strategies fixed.

    Every cycle gets its average reward as gain; the bias is anchored to zero
    at the smallest vertex of each cycle and propagated backwards.
    """
    choice = {**mu, **chi}
    n = len(g)
    move = [g.moves[v][choice[v]] for v in range(n)]
    succ = [m.target for m in move]
    gain = [None] * n
    bias = [None] * n

    for cyc in _cycles(succ):
        total = Fraction(0)
        for v in cyc:
            if g.states[v].interior and not move[v].hold:
                raise NonPointCycleVertex(f"vertex {g.states[v]} lies on a cycle with a timed move")
            total += move[v].reward
        value = total / len(cyc)
        if require_integral and value.denominator != 1:
            raise NonIntegralGain([g.states[v] for v in cyc], value)
        for v in cyc:
            gain[v] = value
        bias[cyc[0]] = ZERO
        for v in reversed(cyc[1:]):
            bias[v] = bias_step(move[v], value, bias[succ[v]])
        closing = bias_step(move[cyc[0]], value, bias[succ[cyc[0]]])
        rep = g.states[cyc[0]].valuation
        assert evaluate(closing, rep) == 0, "cycle equations do not close"

    for root in range(n):
        path = []
        v = root
        while gain[v] is None:
            path.append(v)
            v = succ[v]
        for u in reversed(path):
            gain[u] = gain[succ[u]]
            bias[u] = bias_step(move[u], gain[u], bias[succ[u]])
    return GainBiasSolution(g, gain, bias, min_strategy=dict(mu), max_strategy=dict(chi))


def candidates(g, v, gain, bias):
    """``(gain of target, bias term)`` for every move of ``v``."""
    return [(gain[m.target], bias_step(m, gain[v], bias[m.target])) for m in g.moves[v]]


def best_moves(g, v, gain, bias, direction):
    """Indices of the lexicographically optimal moves of ``v``."""
    cands = candidates(g, v, gain, bias)
    pick = max if direction is Direction.MAX else min
    top = pick(c[0] for c in cands)
    z = g.val_region(v)
    worse = Ordering.LESS if direction is Direction.MAX else Ordering.GREATER
    best = None
    for gv, b in cands:
        if gv == top and (best is None or compare_on_region(best, b, z) is worse):
            best = b
    return [i for i, (gv, b) in enumerate(cands)
            if gv == top and compare_on_region(b, best, z) is Ordering.EQUAL]


def _improve(g, strategy, gain, bias, direction):
    new = {}
    for v, current in strategy.items():
        best = best_moves(g, v, gain, bias, direction)
        new[v] = current if current in best else best[0]
    return new


def improve_min(g, mu, gain, bias):
    return _improve(g, mu, gain, bias, Direction.MIN)


def improve_max(g, chi, gain, bias):
    return _improve(g, chi, gain, bias, Direction.MAX)


def _key(strategy):
    return tuple(sorted(strategy.items()))


def solve_two_player(g, max_iters=100_000, require_integral=True, observer=None):
    """Nested strategy improvement: Max outside, Min best response inside.

    Intermediate profiles may have fractional gains; ``require_integral``
    applies to the returned solution.  ``observer(phase, solution)`` is called
    after every evaluation with phase ``"min"``, and with ``"max"`` once Min's
    best response to the current Max strategy is known.
    """
    seen = set()
    evaluations = 0
    chi_next = initial_strategy(g, True)
    while True:
        chi = chi_next
        mu_next = initial_strategy(g, False)
        while True:
            mu = mu_next
            key = (_key(mu), _key(chi))
            if key in seen:
                raise IterationCapExceeded("strategy profile revisited")
            seen.add(key)
            evaluations += 1
            if evaluations > max_iters:
                raise IterationCapExceeded(f"more than {max_iters} profile evaluations")
            sol = eval_zero_player(g, mu, chi, require_integral=False)
            if observer:
                observer("min", sol)
            mu_next = improve_min(g, mu, sol.gain, sol.bias)
            if mu_next == mu:
                break
        if observer:
            observer("max", sol)
        chi_next = improve_max(g, chi, sol.gain, sol.bias)
        if chi_next == chi:
            break
    if require_integral:
        for v, value in enumerate(sol.gain):
            if value.denominator != 1:
                raise NonIntegralGain([g.states[v]], value)
    sol.iterations = evaluations
    return sol


def lex_compare(g, v, a, b):
    """Compare ``(gain, bias)`` pairs of vertex ``v`` lexicographically."""
    if a[0] != b[0]:
        return Ordering.LESS if a[0] < b[0] else Ordering.GREATER
    return compare_on_region(a[1], b[1], g.val_region(v))


def rescaled(sol, scale):
    return replace(sol, scale=scale)


def is_simple(sol):
    """Every gain integral and every bias offset integral."""
    return (all(x.denominator == 1 for x in sol.gain)
            and all(b.integral for b in sol.bias))


def const_or_offset(sol, v):
    return "const" if sol.bias[v].kind == CONST else "offset"
