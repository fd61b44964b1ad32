"""Boundary region abstraction of a one-clock PTGA.

A state ``(l, v, z)`` pairs a configuration with a region ``z`` whose closure
holds ``v``.  A boundary action waits until the clock hits an integer ``b`` on
the border of a future region and then fires an edge.  Explored from
``(l0, 0, {0})`` only integral valuations occur (the corner-point graph).
"""

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import ActionNotAvailable, MpgtaError, TimelockDetected
from .ptga import MAX
from .regions import Region, future_regions, region_of


class Flavor(enum.Enum):
    EXACT = "exact"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class BraState:
    location: str
    valuation: Fraction
    region: Region

    def __post_init__(self):
        object.__setattr__(self, "valuation", Fraction(self.valuation))
        if not self.region.closure_contains(self.valuation):
            raise MpgtaError(f"valuation {self.valuation} outside closure of {self.region}")

    @property
    def val_region(self):
        return region_of(self.valuation, self.region.k_bound)

    @property
    def interior(self):
        """True for the class of open-region valuations inside an open region."""
        return self.val_region.thick

    def __str__(self):
        return f"({self.location}, {self.valuation}, {self.region})"


@dataclass(frozen=True)
class BoundaryAction:
    b: int
    action: str
    target_region: Region
    flavor: Flavor

    def __str__(self):
        return f"({self.b}, {self.action}, {self.target_region}, {self.flavor.value})"


@dataclass(frozen=True)
class Move:
    """One outgoing transition of a graph vertex."""

    action: BoundaryAction
    target: int
    reward: Fraction
    price: int
    rate: int
    reset: bool
    hold: bool


def available_actions(ptga, s):
    """Boundary actions enabled in ``s``, ordered by edge, region, then flavor."""
    loc = ptga.location(s.location)
    k = ptga.k_bound
    inv = loc.invariant.region_span(k)
    if inv is None:
        return []
    out = []
    for e in ptga.edges_from(s.location):
        g = e.guard.region_span(k)
        if g is None:
            continue
        tinv = ptga.location(e.target).invariant.region_span(k)
        if tinv is None:
            continue
        for z in future_regions(s.region):
            if z.index > inv[1]:
                break
            if not g[0] <= z.index <= g[1]:
                continue
            landing = 0 if e.resets else z.index
            if not tinv[0] <= landing <= tinv[1]:
                continue
            if z.thin:
                out.append(BoundaryAction(z.lower, e.action, z, Flavor.EXACT))
            else:
                out.append(BoundaryAction(z.lower, e.action, z, Flavor.LOWER))
                out.append(BoundaryAction(z.upper, e.action, z, Flavor.UPPER))
    return out


def _successor(ptga, s, a):
    e = ptga.edge(s.location, a.action)
    rate = ptga.location(s.location).rate
    hold = s.valuation > a.b
    delay = Fraction(0) if hold else a.b - s.valuation
    reward = Fraction(e.price) + rate * delay
    if e.resets:
        nxt = BraState(e.target, 0, Region.point(0, ptga.k_bound))
    else:
        nxt = BraState(e.target, s.valuation + delay, a.target_region)
    return nxt, reward, e, rate, hold


def apply_action(ptga, s, a):
    """Fire ``a`` in ``s``; returns ``(successor, reward)``."""
    if a not in available_actions(ptga, s):
        raise ActionNotAvailable(f"{a} is not available in {s}")
    nxt, reward, *_ = _successor(ptga, s, a)
    return nxt, reward


def order_key(ptga, s):
    """The vertex order: location index, region of the valuation, region."""
    return ptga.location_index(s.location), s.val_region.index, s.region.index


def interior_state(location, region):
    return BraState(location, region.representative(), region)


class BraGraph:
    """Finite reachable part of the abstraction with vertices in vertex order."""

    def __init__(self, ptga, start, states, moves):
        self.ptga = ptga
        self.start = start
        self.states = states
        self.index = {order_key(ptga, s): i for i, s in enumerate(states)}
        self.moves = moves
        self.owner = [ptga.location(s.location).owner for s in states]

    def __len__(self):
        return len(self.states)

    def vertex(self, location, val_region, region):
        return self.index.get((self.ptga.location_index(location), val_region.index, region.index))

    def index_of(self, s):
        return self.index.get(order_key(self.ptga, s))

    @property
    def initial(self):
        return self.index_of(BraState(self.start, 0, Region.point(0, self.ptga.k_bound)))

    def is_max(self, v):
        return self.owner[v] == MAX

    def val_region(self, v):
        return self.states[v].val_region

    def reachable_from(self, v):
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for m in self.moves[u]:
                if m.target not in seen:
                    seen.add(m.target)
                    stack.append(m.target)
        return seen


def build_bra(ptga, start=None, interior=False):
    """Breadth-first closure of the abstraction from ``(start, 0, {0})``.

    With ``interior`` every non-resetting move into an open region also adds
    the class of valuations strictly inside that region, so that the solution
    covers every configuration the timed game can reach.
    """
    start = ptga.initial if start is None else start
    k = ptga.k_bound
    root = BraState(start, 0, Region.point(0, k))
    seen = {root}
    queue = deque([root])
    raw = {}
    while queue:
        s = queue.popleft()
        acts = available_actions(ptga, s)
        if not acts:
            raise TimelockDetected(f"no boundary action available in {s}", state=s)
        out = []
        for a in acts:
            nxt, reward, e, rate, hold = _successor(ptga, s, a)
            if not s.interior and nxt.valuation.denominator != 1:
                raise MpgtaError(f"non-integral corner valuation {nxt}")
            todo = [nxt]
            if interior and not e.resets and nxt.region.thick:
                todo.append(interior_state(nxt.location, nxt.region))
            for t in todo:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
            out.append((a, nxt, reward, e.price, rate, e.resets, hold))
        raw[s] = out

    states = sorted(seen, key=lambda s: order_key(ptga, s))
    pos = {s: i for i, s in enumerate(states)}
    moves = [
        [Move(a, pos[nxt], reward, price, rate, reset, hold)
         for a, nxt, reward, price, rate, reset, hold in raw[s]]
        for s in states
    ]
    return BraGraph(ptga, start, states, moves)


def _dot_escape(text):
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def export_dot(g):
    lines = ["digraph bra {"]
    for i, s in enumerate(g.states):
        shape = "box" if g.owner[i] == MAX else "ellipse"
        label = f"{s.location} | {s.valuation} | {s.region}"
        lines.append(f'  n{i} [label="{_dot_escape(label)}", shape={shape}];')
    for i, ms in enumerate(g.moves):
        for m in ms:
            a = m.action
            label = f"{a.action}, {a.b}, {a.flavor.value}, {m.reward}"
            lines.append(f'  n{i} -> n{m.target} [label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
