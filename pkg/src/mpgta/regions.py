"""One-clock region calculus.

Regions for a clock bounded by ``K`` are numbered ``0 .. 2K`` in their natural
order: even indices are the points ``{i}`` (index ``2i``), odd indices the open
intervals ``(i, i+1)`` (index ``2i+1``).  Valuations are :class:`fractions.Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import RegionError


@dataclass(frozen=True, order=True)
class Region:
    index: int
    k_bound: int

    def __post_init__(self):
        if not 0 <= self.index <= 2 * self.k_bound:
            raise RegionError(f"region index {self.index} outside [0, {2 * self.k_bound}]")

    @classmethod
    def point(cls, i, k_bound):
        return cls(2 * i, k_bound)

    @classmethod
    def open(cls, i, k_bound):
        return cls(2 * i + 1, k_bound)

    @property
    def thin(self):
        return self.index % 2 == 0

    @property
    def thick(self):
        return not self.thin

    @property
    def lower(self):
        """Integer infimum of the region."""
        return self.index // 2

    @property
    def upper(self):
        """Integer supremum of the region."""
        return (self.index + 1) // 2

    def representative(self):
        if self.thin:
            return Fraction(self.lower)
        return Fraction(2 * self.lower + 1, 2)

    def contains(self, v):
        if self.thin:
            return v == self.lower
        return self.lower < v < self.upper

    def closure_contains(self, v):
        return self.lower <= v <= self.upper

    def __str__(self):
        if self.thin:
            return f"{{{self.lower}}}"
        return f"({self.lower},{self.upper})"


def all_regions(k_bound):
    return [Region(i, k_bound) for i in range(2 * k_bound + 1)]


def region_of(v, k_bound):
    v = Fraction(v)
    if not 0 <= v <= k_bound:
        raise RegionError(f"valuation {v} outside [0, {k_bound}]")
    if v.denominator == 1:
        return Region.point(int(v), k_bound)
    return Region.open(v.numerator // v.denominator, k_bound)


def time_successor(z):
    if z.index == 2 * z.k_bound:
        return None
    return Region(z.index + 1, z.k_bound)


def future_regions(z):
    """``z`` followed by its iterated time successors.

    The slice between two members is the zone spanned by them.
    """
    return [Region(i, z.k_bound) for i in range(z.index, 2 * z.k_bound + 1)]


def time_to_boundary(v, b):
    """Delay until the clock reaches ``b``; zero once it is already past."""
    return max(Fraction(0), Fraction(b) - Fraction(v))
