"""One-clock priced timed game arenas: model, JSON format, validation, scaling."""

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import ParseError
from .regions import Region

MIN = "min"
MAX = "max"
OPS = ("<", "<=", "=", ">=", ">")
_OP_RANK = {op: i for i, op in enumerate(OPS)}
_ATOM = re.compile(r"^\s*([A-Za-z_]\w*)\s*(<=|>=|==|=|<|>)\s*(\d+)\s*$")
_DIAGONAL = re.compile(r"^\s*[A-Za-z_]\w*\s*-\s*[A-Za-z_]\w*")


@dataclass(frozen=True)
class ClockConstraint:
    """Conjunction of atoms ``x OP n`` kept in canonical interval form.

    The canonical form has at most one lower atom and one upper atom, uses
    ``=`` for degenerate closed intervals and ``x < 0`` for the empty set.
    """

    atoms: tuple = ()

    @classmethod
    def of(cls, atoms):
        lo, lo_strict, hi, hi_strict = 0, False, None, False
        for op, n in atoms:
            if op not in _OP_RANK:
                raise ParseError(f"unknown comparison operator {op!r}")
            if n < 0:
                raise ParseError(f"negative constant {n}")
            if op in (">", ">=", "="):
                strict = op == ">"
                if n > lo or (n == lo and strict):
                    lo, lo_strict = n, strict
            if op in ("<", "<=", "="):
                strict = op == "<"
                if hi is None or n < hi or (n == hi and strict):
                    hi, hi_strict = n, strict
        return cls(_canonical_atoms(lo, lo_strict, hi, hi_strict))

    @classmethod
    def parse(cls, text, clock="x"):
        text = text.strip()
        if not text or text == "true":
            return cls()
        atoms = []
        for part in text.split("&"):
            if _DIAGONAL.match(part):
                raise ParseError(f"diagonal constraint {part.strip()!r} is not supported")
            m = _ATOM.match(part)
            if m is None:
                raise ParseError(f"malformed constraint atom {part.strip()!r}")
            name, op, n = m.groups()
            if name != clock:
                raise ParseError(f"constraint mentions unknown clock {name!r}")
            atoms.append(("=" if op == "==" else op, int(n)))
        return cls.of(atoms)

    def interval(self):
        """Return ``(lo, lo_strict, hi, hi_strict)``; ``hi`` is None if unbounded."""
        lo, lo_strict, hi, hi_strict = 0, False, None, False
        for op, n in self.atoms:
            if op == "=":
                lo, hi = n, n
            elif op in (">", ">="):
                lo, lo_strict = n, op == ">"
            else:
                hi, hi_strict = n, op == "<"
        return lo, lo_strict, hi, hi_strict

    @property
    def empty(self):
        lo, lo_strict, hi, hi_strict = self.interval()
        return hi is not None and (lo > hi or (lo == hi and (lo_strict or hi_strict)))

    @property
    def bounded(self):
        return self.interval()[2] is not None

    def max_constant(self):
        return max((n for _, n in self.atoms), default=0)

    def holds(self, v):
        v = Fraction(v)
        lo, lo_strict, hi, hi_strict = self.interval()
        if v < lo or (lo_strict and v == lo):
            return False
        if hi is not None and (v > hi or (hi_strict and v == hi)):
            return False
        return True

    def region_span(self, k_bound):
        """Inclusive range of region indices inside the constraint, or None."""
        lo, lo_strict, hi, hi_strict = self.interval()
        first = 2 * lo + (1 if lo_strict else 0)
        last = 2 * k_bound if hi is None else 2 * hi - (1 if hi_strict else 0)
        last = min(last, 2 * k_bound)
        if first > last:
            return None
        return first, last

    def contains_region(self, z):
        span = self.region_span(z.k_bound)
        return span is not None and span[0] <= z.index <= span[1]

    def scaled(self, factor):
        return ClockConstraint(tuple((op, n * factor) for op, n in self.atoms))

    def to_string(self, clock="x"):
        return " & ".join(f"{clock} {op} {n}" for op, n in self.atoms)

    def __str__(self):
        return self.to_string() or "true"


def _canonical_atoms(lo, lo_strict, hi, hi_strict):
    if hi is not None and (lo > hi or (lo == hi and (lo_strict or hi_strict))):
        return (("<", 0),)
    if hi is not None and lo == hi:
        return (("=", lo),)
    atoms = []
    if lo > 0 or lo_strict:
        atoms.append((">" if lo_strict else ">=", lo))
    if hi is not None:
        atoms.append(("<" if hi_strict else "<=", hi))
    return tuple(sorted(atoms, key=lambda a: (a[1], _OP_RANK[a[0]])))


TRUE = ClockConstraint()


@dataclass(frozen=True)
class Location:
    id: str
    owner: str
    rate: int
    invariant: ClockConstraint = TRUE


@dataclass(frozen=True)
class Edge:
    source: str
    action: str
    guard: ClockConstraint
    resets: bool
    target: str
    price: int


@dataclass(frozen=True)
class PTGA:
    k_bound: int
    locations: tuple
    edges: tuple
    initial: str
    clock: str = "x"
    _loc_index: dict = field(init=False, repr=False, compare=False)
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "edges", tuple(self.edges))
        index = {}
        for i, loc in enumerate(self.locations):
            if loc.id in index:
                raise ParseError(f"duplicate location id {loc.id!r}")
            index[loc.id] = i
        out = {loc.id: {} for loc in self.locations}
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in index:
                    raise ParseError(f"edge {e.action!r} references unknown location {end!r}")
            if e.action in out[e.source]:
                raise ParseError(f"duplicate action {e.action!r} out of location {e.source!r}")
            out[e.source][e.action] = e
        if self.initial not in index:
            raise ParseError(f"initial location {self.initial!r} is not declared")
        object.__setattr__(self, "_loc_index", index)
        object.__setattr__(self, "_out", out)

    def location(self, loc_id):
        return self.locations[self._loc_index[loc_id]]

    def location_index(self, loc_id):
        return self._loc_index[loc_id]

    def has_location(self, loc_id):
        return loc_id in self._loc_index

    def edges_from(self, loc_id):
        return list(self._out[loc_id].values())

    def edge(self, loc_id, action):
        return self._out[loc_id][action]

    def region(self, index):
        return Region(index, self.k_bound)


# ---------------------------------------------------------------------------
# JSON format


def _require(obj, key, where):
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_ptga(text):
    """Parse a PTGA document (JSON text) into a :class:`PTGA`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    clocks = _require(doc, "clocks", "document")
    if not isinstance(clocks, list) or not clocks:
        raise ParseError("clocks must be a non-empty array")
    if len(clocks) > 1:
        raise ParseError(f"more than one clock declared: {clocks}")
    clock = clocks[0]
    k_bound = _int(_require(doc, "k_bound", "document"), "k_bound")
    if k_bound < 1:
        raise ParseError("k_bound must be a positive integer")

    locations = []
    for i, raw in enumerate(_require(doc, "locations", "document")):
        where = f"locations[{i}]"
        owner = _require(raw, "owner", where)
        if owner not in (MIN, MAX):
            raise ParseError(f"{where}: owner must be 'min' or 'max', got {owner!r}")
        locations.append(Location(
            id=str(_require(raw, "id", where)),
            owner=owner,
            rate=_int(_require(raw, "rate", where), where + ".rate"),
            invariant=ClockConstraint.parse(raw.get("invariant", ""), clock),
        ))

    edges = []
    for i, raw in enumerate(_require(doc, "edges", "document")):
        where = f"edges[{i}]"
        resets = _require(raw, "resets", where)
        if not isinstance(resets, list) or any(r != clock for r in resets):
            raise ParseError(f"{where}: resets must be [] or [{clock!r}], got {resets!r}")
        edges.append(Edge(
            source=str(_require(raw, "from", where)),
            action=str(_require(raw, "action", where)),
            guard=ClockConstraint.parse(raw.get("guard", ""), clock),
            resets=bool(resets),
            target=str(_require(raw, "to", where)),
            price=_int(_require(raw, "price", where), where + ".price"),
        ))
    return PTGA(k_bound, locations, edges, str(_require(doc, "initial", "document")), clock)


def load_ptga(path):
    with open(path, encoding="utf-8") as fh:
        return parse_ptga(fh.read())


def ptga_to_dict(ptga):
    c = ptga.clock
    return {
        "clocks": [c],
        "k_bound": ptga.k_bound,
        "initial": ptga.initial,
        "locations": [
            {"id": loc.id, "owner": loc.owner, "rate": loc.rate,
             "invariant": loc.invariant.to_string(c)}
            for loc in ptga.locations
        ],
        "edges": [
            {"from": e.source, "action": e.action, "guard": e.guard.to_string(c),
             "resets": [c] if e.resets else [], "to": e.target, "price": e.price}
            for e in ptga.edges
        ],
    }


def serialize_ptga(ptga):
    return json.dumps(ptga_to_dict(ptga), indent=2) + "\n"


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    element: str


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple = ()

    @property
    def ok(self):
        return not self.diagnostics

    def codes(self):
        return [d.code for d in self.diagnostics]


def validate(ptga):
    """Check that ``ptga`` lies in the decidable fragment handled by the solver."""
    diags = []
    k = ptga.k_bound

    def constants(where, cc):
        if cc.max_constant() > k:
            diags.append(Diagnostic("ConstantExceedsBound",
                                    f"constant {cc.max_constant()} exceeds K={k}", where))

    for loc in ptga.locations:
        where = f"location {loc.id}"
        if loc.rate not in (0, 1):
            diags.append(Diagnostic("NonBinaryRate", f"price rate {loc.rate} is not 0 or 1", where))
        constants(where, loc.invariant)
        if not loc.invariant.bounded:
            diags.append(Diagnostic("UnboundedInvariant",
                                    f"invariant {loc.invariant} does not imply x <= {k}", where))
        elif loc.invariant.empty:
            diags.append(Diagnostic("EmptyInvariant", "invariant is unsatisfiable", where))

    for e in ptga.edges:
        where = f"edge {e.source}.{e.action}"
        constants(where, e.guard)
        inv = ptga.location(e.source).invariant
        g_span, i_span = e.guard.region_span(k), inv.region_span(k)
        if g_span is None or i_span is None or g_span[1] < i_span[0] or i_span[1] < g_span[0]:
            diags.append(Diagnostic("UnsatisfiableGuard",
                                    f"guard {e.guard} never holds inside invariant {inv}", where))

    init = ptga.location(ptga.initial)
    if not init.invariant.holds(0):
        diags.append(Diagnostic("InitialStateViolatesInvariant",
                                f"valuation 0 violates invariant {init.invariant}",
                                f"location {init.id}"))
    return ValidationReport(tuple(diags))


def scale_constants(ptga, factor):
    """Multiply every clock constant, ``K`` and every edge price by ``factor``."""
    if isinstance(factor, bool) or not isinstance(factor, int) or factor < 1:
        raise ValueError(f"scale factor must be a positive integer, got {factor!r}")
    return PTGA(
        k_bound=ptga.k_bound * factor,
        locations=[replace(loc, invariant=loc.invariant.scaled(factor)) for loc in ptga.locations],
        edges=[replace(e, guard=e.guard.scaled(factor), price=e.price * factor) for e in ptga.edges],
        initial=ptga.initial,
        clock=ptga.clock,
    )
