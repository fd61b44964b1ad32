"""Simple functions of the clock: ``v -> d`` or ``v -> d - v``.

Biases of the solver are kept in this form, one function per vertex.  With
integral ``d`` two simple functions cannot cross strictly inside an open
region, so comparing them at the region's representative decides the order
on the whole region.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

CONST = "const"
OFFSET = "offset"


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Direction(enum.Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class SimpleFn:
    kind: str
    d: Fraction

    def __post_init__(self):
        if self.kind not in (CONST, OFFSET):
            raise ValueError(f"unknown simple function kind {self.kind!r}")
        object.__setattr__(self, "d", Fraction(self.d))

    @classmethod
    def const(cls, d):
        return cls(CONST, d)

    @classmethod
    def offset(cls, d):
        return cls(OFFSET, d)

    @property
    def integral(self):
        return self.d.denominator == 1

    def __call__(self, v):
        return evaluate(self, v)

    def shifted(self, c):
        return SimpleFn(self.kind, self.d + c)

    def __str__(self):
        d = self.d
        if self.kind == CONST:
            return str(d)
        return f"{d} - x"


ZERO = SimpleFn.const(0)


def evaluate(f, v):
    if f.kind == CONST:
        return f.d
    return f.d - Fraction(v)


def compare_on_region(f, g, z):
    """Order of ``f`` and ``g`` on region ``z``, decided at its representative."""
    v = z.representative()
    diff = evaluate(f, v) - evaluate(g, v)
    if diff < 0:
        return Ordering.LESS
    if diff > 0:
        return Ordering.GREATER
    return Ordering.EQUAL


def extremum_on_region(fs, z, direction):
    """Pointwise minimum or maximum of ``fs`` over ``z`` as ``(fn, index)``.

    Ties go to the lowest index.
    """
    if not fs:
        raise ValueError("extremum of an empty sequence")
    worse = Ordering.GREATER if direction is Direction.MIN else Ordering.LESS
    best, best_i = fs[0], 0
    for i, f in enumerate(fs[1:], start=1):
        if compare_on_region(best, f, z) is worse:
            best, best_i = f, i
    return best, best_i


def step_compose(rate, price, b, reset, g, next_fn, hold=False):
    """Bias contributed by one boundary action.

    Returns ``v -> price + rate*(b - v) - g + next_fn(v')`` where ``v'`` is 0
    after a reset and ``b`` otherwise.  With ``hold`` the action fires without
    delay: no time is charged and, unless reset, the successor keeps ``v``.
    """
    if hold:
        if reset:
            return SimpleFn.const(price - g + evaluate(next_fn, 0))
        return next_fn.shifted(price - g)
    tail = evaluate(next_fn, 0 if reset else b)
    if rate == 0:
        return SimpleFn.const(price - g + tail)
    if rate == 1:
        return SimpleFn.offset(b + price - g + tail)
    raise ValueError(f"price rate must be 0 or 1, got {rate}")
