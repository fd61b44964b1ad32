"""Mean-payoff games on finite arenas.

Minimum mean cycles by Karp's table, Min's best response against a fixed
Max strategy (gain by minimum mean cycle, bias by shortest paths), and the
myopic strategy improvement loop for Max.  Everything is exact.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IterationCapExceeded, NoReachableCycle, ParseError, ProfileSpaceTooLarge
from .ptga import MAX, MIN


@dataclass(frozen=True)
class ArenaEdge:
    source: int
    label: str
    target: int
    weight: Fraction


class FiniteArena:
    """Nodes ``0..n-1`` in their order; ``owners[i]`` is ``"min"`` or ``"max"``."""

    def __init__(self, owners, edges, ids=None):
        self.owners = list(owners)
        self.ids = list(ids) if ids is not None else [str(i) for i in range(len(self.owners))]
        self.edges = [ArenaEdge(u, str(a), v, Fraction(w)) for u, a, v, w in edges]
        self.out = [[] for _ in self.owners]
        for e in self.edges:
            if not (0 <= e.source < len(self.owners) and 0 <= e.target < len(self.owners)):
                raise ParseError(f"edge {e.label} refers to an unknown node")
            self.out[e.source].append(e)
        for i, es in enumerate(self.out):
            if not es:
                raise ParseError(f"node {self.ids[i]} has no outgoing edge")
        for o in self.owners:
            if o not in (MIN, MAX):
                raise ParseError(f"unknown owner {o!r}")

    def __len__(self):
        return len(self.owners)

    def is_max(self, s):
        return self.owners[s] == MAX

    def players(self, maximizer):
        return [s for s in range(len(self)) if self.is_max(s) == maximizer]

    def restrict(self, strategy):
        """Arena in which the nodes of ``strategy`` keep only the chosen edge."""
        edges = [(e.source, e.label, e.target, e.weight)
                 for s in range(len(self))
                 for i, e in enumerate(self.out[s])
                 if s not in strategy or strategy[s] == i]
        return FiniteArena(self.owners, edges, self.ids)

    def adjacency(self):
        return [[(e.target, e.weight) for e in es] for es in self.out]


@dataclass
class FiniteSolution:
    gain: list
    bias: list
    min_strategy: dict = field(default_factory=dict)
    max_strategy: dict = field(default_factory=dict)
    iterations: int = 0


def _reachable(adj, source):
    seen = {source}
    stack = [source]
    while stack:
        u = stack.pop()
        for w, _ in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)


def karp_table(adj, source, nodes):
    """``D[k][v]``: least weight of a walk of exactly ``k`` edges from ``source``."""
    n = len(nodes)
    D = [dict.fromkeys(nodes) for _ in range(n + 1)]
    D[0][source] = 0
    for k in range(1, n + 1):
        prev, cur = D[k - 1], D[k]
        for u in nodes:
            if prev[u] is None:
                continue
            for w, x in adj[u]:
                x += prev[u]
                if cur[w] is None or x < cur[w]:
                    cur[w] = x
    return D


def _min_mean(D, nodes):
    n = len(nodes)
    best = None
    for v in nodes:
        if D[n][v] is None:
            continue
        worst = max(Fraction(D[n][v] - D[k][v]) / (n - k)
                    for k in range(n) if D[k][v] is not None)
        if best is None or worst < best:
            best = worst
    return best


def min_cycle_mean(adj, source):
    """Least mean of a cycle reachable from ``source`` in ``adj``, or None.

    ``adj[u]`` lists ``(target, weight)`` pairs.  Weights are brought to a
    common denominator so the table is filled with integers only.
    """
    nodes = _reachable(adj, source)
    n = len(nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    den = math.lcm(1, *(Fraction(x).denominator for u in nodes for _, x in adj[u]))
    succ = [[(pos[w], int(x * den)) for w, x in adj[u]] for u in nodes]
    prev = [None] * n
    prev[pos[source]] = 0
    table = [prev]
    for _ in range(n):
        cur = [None] * n
        for u, du in enumerate(prev):
            if du is None:
                continue
            for w, x in succ[u]:
                x += du
                c = cur[w]
                if c is None or x < c:
                    cur[w] = x
        table.append(cur)
        prev = cur
    best_num, best_den = None, 1
    for v in range(n):
        dn = prev[v]
        if dn is None:
            continue
        num, dd = None, 1
        for k in range(n):
            dk = table[k][v]
            if dk is None:
                continue
            a, b = dn - dk, n - k
            if num is None or a * dd > num * b:
                num, dd = a, b
        if best_num is None or num * best_den < best_num * dd:
            best_num, best_den = num, dd
    if best_num is None:
        return None
    return Fraction(best_num, best_den * den)


def _tight_cycle_nodes(adj, nodes, potential, mean):
    """Nodes on some cycle of edges that are tight for ``potential``."""
    tight = {u: [w for w, x in adj[u] if potential[u] + x - mean == potential[w]] for u in nodes}
    on_cycle = []
    for u in nodes:
        seen = set()
        stack = list(tight[u])
        while stack:
            w = stack.pop()
            if w == u:
                on_cycle.append(u)
                break
            if w not in seen:
                seen.add(w)
                stack.extend(tight[w])
    return tight, on_cycle


def _cycle_through(tight, m):
    parent = {m: None}
    queue = [m]
    for u in queue:
        for w in tight[u]:
            if w == m:
                path = [u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if w not in parent:
                parent[w] = u
                queue.append(w)
    raise AssertionError("tight node not on a tight cycle")


def _karp(adj, source):
    nodes = _reachable(adj, source)
    D = karp_table(adj, source, nodes)
    mean = _min_mean(D, nodes)
    if mean is None:
        raise NoReachableCycle(f"no cycle reachable from node {source}")
    potential = {}
    for v in nodes:
        potential[v] = min(D[k][v] - k * mean for k in range(len(nodes) + 1) if D[k][v] is not None)
    tight, on_cycle = _tight_cycle_nodes(adj, nodes, potential, mean)
    return mean, tight, on_cycle


def karp_min_mean(arena, source):
    """Least mean of a cycle reachable from ``source``, with a witness cycle.

    ``arena`` is a FiniteArena or an adjacency list of ``(target, weight)``
    pairs.  The witness passes through the smallest node lying on any
    minimum mean cycle reachable from ``source`` and starts at that node.
    """
    adj = arena.adjacency() if isinstance(arena, FiniteArena) else arena
    mean, tight, on_cycle = _karp(adj, source)
    cycle = _cycle_through(tight, min(on_cycle))
    assert cycle_mean(adj, cycle) == mean, "witness cycle does not achieve the minimum mean"
    return mean, cycle


def cycle_mean(adj, cycle):
    total = sum(min(x for t, x in adj[u] if t == w) for u, w in zip(cycle, cycle[1:] + cycle[:1]))
    return Fraction(total) / len(cycle)


def best_response_min(arena, chi):
    """Min's best response in the subgame where Max plays ``chi``.

    Returns ``(mu, G, B)``.  ``G(s)`` is the least cycle mean reachable from
    ``s``.  A node is critical when it lies on a cycle of mean ``G(s)``;
    ``B(s)`` is the least ``G``-shifted weight of a path from ``s`` to a
    critical node along edges that keep the gain.
    """
    sub = arena.restrict(chi)
    n = len(arena)
    G = [None] * n
    B = [None] * n
    for s in range(n):
        G[s], _, on_cycle = _karp(sub.adjacency(), s)
        if s in on_cycle:
            B[s] = Fraction(0)

    def relax():
        changed = False
        for s in range(n):
            for e in sub.out[s]:
                if G[e.target] == G[s] and B[e.target] is not None:
                    x = e.weight - G[s] + B[e.target]
                    if B[s] is None or x < B[s]:
                        B[s] = x
                        changed = True
        return changed

    for _ in range(n):
        if not relax():
            break
    assert not relax(), "negative G-shifted cycle"

    mu = {}
    for s in arena.players(False):
        for i, e in enumerate(arena.out[s]):
            if G[e.target] == G[s] and B[s] == e.weight - G[s] + B[e.target]:
                mu[s] = i
                break
    return mu, G, B


def lex_key(e, G, B, s):
    return G[e.target], e.weight - G[s] + B[e.target]


def improve_max_finite(arena, chi, G, B):
    new = {}
    for s, cur in chi.items():
        keys = [lex_key(e, G, B, s) for e in arena.out[s]]
        top = max(keys)
        new[s] = cur if keys[cur] == top else keys.index(top)
    return new


def solve_finite_mpg(arena, max_iters=100_000):
    """Strategy improvement for Max against Min's best responses."""
    chi = {s: 0 for s in arena.players(True)}
    seen = set()
    prev = None
    switched = []
    for it in range(1, max_iters + 1):
        key = tuple(sorted(chi.items()))
        if key in seen:
            raise IterationCapExceeded("Max strategy revisited")
        seen.add(key)
        mu, G, B = best_response_min(arena, chi)
        if prev is not None:
            _assert_improvement(prev, (G, B), switched)
        nxt = improve_max_finite(arena, chi, G, B)
        if nxt == chi:
            return FiniteSolution(G, B, mu, chi, it)
        switched = [s for s in chi if nxt[s] != chi[s]]
        prev = (G, B)
        chi = nxt
    raise IterationCapExceeded(f"more than {max_iters} improvement rounds")


def _assert_improvement(old, new, switched):
    (G, B), (G2, B2) = old, new
    for s in range(len(G)):
        assert G2[s] >= G[s], f"gain decreased at node {s}"
        if G2[s] == G[s]:
            assert B2[s] >= B[s], f"bias decreased at node {s}"
    for s in switched:
        assert (G2[s], B2[s]) > (G[s], B[s]), f"no strict improvement at switched node {s}"


def check_opt_finite(arena, G, B):
    """Violated optimality equations as ``(node, "gain"|"bias", lhs, rhs)``."""
    bad = []
    for s in range(len(arena)):
        pick = max if arena.is_max(s) else min
        g = pick(G[e.target] for e in arena.out[s])
        if g != G[s]:
            bad.append((s, "gain", G[s], g))
            continue
        b = pick(e.weight - G[s] + B[e.target] for e in arena.out[s] if G[e.target] == G[s])
        if b != B[s]:
            bad.append((s, "bias", B[s], b))
    return bad


def lasso_mean(arena, choice, start):
    """Mean of the cycle reached from ``start`` when node ``s`` takes edge ``choice[s]``."""
    pos = {}
    path = []
    s = start
    while s not in pos:
        pos[s] = len(path)
        path.append(s)
        s = arena.out[s][choice[s]].target
    cyc = path[pos[s]:]
    total = sum(arena.out[u][choice[u]].weight for u in cyc)
    return Fraction(total) / len(cyc)


def _profiles(arena, nodes):
    return itertools.product(*(range(len(arena.out[s])) for s in nodes))


def enumerate_oracle_finite(arena, cap=100_000):
    """Per node, min over Min positional maps of max over Max positional maps."""
    mins, maxs = arena.players(False), arena.players(True)
    count = 1
    for s in range(len(arena)):
        count *= len(arena.out[s])
    if count > cap:
        raise ProfileSpaceTooLarge(count, cap)
    best = [None] * len(arena)
    for pm in _profiles(arena, mins):
        worst = [None] * len(arena)
        for px in _profiles(arena, maxs):
            choice = dict(zip(mins, pm)) | dict(zip(maxs, px))
            for s in range(len(arena)):
                x = lasso_mean(arena, choice, s)
                if worst[s] is None or x > worst[s]:
                    worst[s] = x
        for s in range(len(arena)):
            if best[s] is None or worst[s] < best[s]:
                best[s] = worst[s]
    return best


def arena_from_dict(data):
    try:
        ids = [str(n["id"]) for n in data["nodes"]]
        owners = [n["owner"] for n in data["nodes"]]
        pos = {x: i for i, x in enumerate(ids)}
        if len(pos) != len(ids):
            raise ParseError("duplicate node id")
        edges = [(pos[str(e["from"])], e["label"], pos[str(e["to"])], Fraction(str(e["weight"])))
                 for e in data["edges"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed arena: {exc}") from exc
    return FiniteArena(owners, edges, ids)


def parse_arena(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return arena_from_dict(data)


def arena_to_dict(arena):
    return {
        "nodes": [{"id": i, "owner": o} for i, o in zip(arena.ids, arena.owners)],
        "edges": [{"from": arena.ids[e.source], "label": e.label, "to": arena.ids[e.target],
                   "weight": str(e.weight)} for e in arena.edges],
    }
