"""Seeded random instances for oracle and property tests."""

import random
from fractions import Fraction

from mpgta.ptga import MAX, MIN, PTGA, ClockConstraint, Edge, Location


def _guard(rng, k):
    kind = rng.choice(["true", "eq", "lt", "le", "gt", "ge", "band"])
    a = rng.randint(0, k)
    if kind == "true":
        return ClockConstraint()
    if kind == "eq":
        return ClockConstraint.of([("=", a)])
    if kind == "band":
        lo, hi = sorted(rng.sample(range(k + 1), 2)) if k >= 1 else (0, 0)
        return ClockConstraint.of([(rng.choice([">", ">="]), lo), (rng.choice(["<", "<="]), hi)])
    op = {"lt": "<", "le": "<=", "gt": ">", "ge": ">="}[kind]
    if op == "<":
        a = max(a, 1)
    if op == ">":
        a = min(a, k - 1)
    return ClockConstraint.of([(op, a)])


def random_ptga(seed, max_locations=4, max_k=3, max_edges=3, prices=(-2, 2)):
    """A one-clock binary-priced PTGA that cannot time-lock.

    Every location gets a resetting escape edge enabled at its invariant
    bound, and every invariant contains 0, so each state can always wait to
    the bound and fire the escape.
    """
    rng = random.Random(seed)
    k = rng.randint(1, max_k)
    n = rng.randint(1, max_locations)
    ids = [f"l{i}" for i in range(n)]
    bounds = [rng.randint(1, k) for _ in ids]
    locations = [
        Location(ids[i], rng.choice([MIN, MAX]), rng.randint(0, 1),
                 ClockConstraint.of([("<=", bounds[i])]))
        for i in range(n)
    ]
    edges = []
    for i, src in enumerate(ids):
        u = bounds[i]
        escape = rng.choice([ClockConstraint(), ClockConstraint.of([("=", u)]),
                             ClockConstraint.of([(">=", rng.randint(0, u))])])
        edges.append(Edge(src, "e0", escape, True, rng.choice(ids), rng.randint(*prices)))
        for j in range(1, rng.randint(1, max_edges)):
            edges.append(Edge(src, f"e{j}", _guard(rng, u), rng.random() < 0.5,
                              rng.choice(ids), rng.randint(*prices)))
    return PTGA(k, locations, edges, ids[0])


def random_arena(rng, max_nodes=5, max_out=3, weights=(-3, 3)):
    """Random finite arena as ``(owners, edges)`` with every node non-blocking."""
    n = rng.randint(1, max_nodes)
    owners = [rng.choice([MIN, MAX]) for _ in range(n)]
    edges = []
    for u in range(n):
        for j in range(rng.randint(1, max_out)):
            edges.append((u, f"a{j}", rng.randrange(n), Fraction(rng.randint(*weights))))
    return owners, edges


def arena_ptga(owners, edges, initial=0):
    """PTGA whose corner graph from ``initial`` is the given finite arena.

    Every location has rate 0 and every edge fires at ``x = 0`` with a reset,
    so an arena edge ``(u, label, v, w)`` becomes exactly one move of reward
    ``w``.  Weights must be integers.
    """
    locations = [Location(f"n{i}", o, 0, ClockConstraint.of([("<=", 1)]))
                 for i, o in enumerate(owners)]
    es = [Edge(f"n{u}", label, ClockConstraint.of([("=", 0)]), True, f"n{v}", int(w))
          for u, label, v, w in edges]
    return PTGA(1, locations, es, f"n{initial}")
