"""Brute-force value of a boundary region graph over positional strategies.

The oracle shares no code with strategy improvement.  It enumerates the
positional strategies of one player on the part of the graph reachable from
the start and solves each one-player remainder with Karp's minimum mean
cycle.  By positional determinacy min-max equals max-min, so the player
with fewer strategies is enumerated.
"""

import itertools
import math

from ..errors import ProfileSpaceTooLarge
from ..finite import min_cycle_mean

DEFAULT_CAP = 200_000


def _collapsed(g, nodes):
    """Per vertex, one ``(target, reward)`` per successor, best for its owner."""
    out = {}
    for v in nodes:
        pick = max if g.is_max(v) else min
        best = {}
        for m in g.moves[v]:
            r = m.reward
            best[m.target] = r if m.target not in best else pick(best[m.target], r)
        out[v] = sorted(best.items())
    return out


def profile_counts(g, start):
    nodes = sorted(g.reachable_from(start))
    out = _collapsed(g, nodes)
    n_min = math.prod(len(out[v]) for v in nodes if not g.is_max(v))
    n_max = math.prod(len(out[v]) for v in nodes if g.is_max(v))
    return n_min, n_max


def oracle_min_max(g, start=None, cap=DEFAULT_CAP):
    """Mean payoff at ``start`` when both players use positional strategies."""
    start = g.initial if start is None else start
    nodes = sorted(g.reachable_from(start))
    out = _collapsed(g, nodes)
    mins = [v for v in nodes if not g.is_max(v)]
    maxs = [v for v in nodes if g.is_max(v)]
    n_min = math.prod(len(out[v]) for v in mins)
    n_max = math.prod(len(out[v]) for v in maxs)
    if min(n_min, n_max) > cap:
        raise ProfileSpaceTooLarge(min(n_min, n_max), cap)

    pos = {v: i for i, v in enumerate(nodes)}
    fixed, free = (mins, maxs) if n_min <= n_max else (maxs, mins)
    # Max picks the largest mean: negate weights so Karp's minimum applies.
    sign = -1 if fixed is mins else 1
    base = [None] * len(nodes)
    for v in free:
        base[pos[v]] = [(pos[t], sign * r) for t, r in out[v]]

    best = None
    for profile in itertools.product(*(out[v] for v in fixed)):
        adj = list(base)
        for v, (t, r) in zip(fixed, profile):
            adj[pos[v]] = [(pos[t], sign * r)]
        value = sign * min_cycle_mean(adj, pos[start])
        if best is None or (value < best if fixed is mins else value > best):
            best = value
    return best
