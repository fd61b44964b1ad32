from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpgta.errors import RegionError
from mpgta.regions import Region, all_regions, future_regions, region_of, time_successor, time_to_boundary


def test_region_of_examples():
    assert region_of(Fraction(3, 2), 2) == Region.open(1, 2)
    assert region_of(0, 2) == Region.point(0, 2)
    assert region_of(2, 2) == Region.point(2, 2)


def test_region_of_out_of_range():
    with pytest.raises(RegionError):
        region_of(3, 2)
    with pytest.raises(RegionError):
        region_of(-1, 2)


def test_time_successor():
    assert time_successor(Region.point(0, 2)) == Region.open(0, 2)
    assert time_successor(Region.open(1, 2)) == Region.point(2, 2)
    assert time_successor(Region.point(2, 2)) is None


def test_future_regions():
    assert future_regions(Region.point(0, 1)) == [Region.point(0, 1), Region.open(0, 1), Region.point(1, 1)]
    assert future_regions(Region.open(1, 2)) == [Region.open(1, 2), Region.point(2, 2)]


def test_time_to_boundary():
    assert time_to_boundary(Fraction(3, 10), 1) == Fraction(7, 10)
    assert time_to_boundary(Fraction(3, 2), 1) == 0
    assert time_to_boundary(1, 1) == 0


def test_region_order_and_strings():
    zs = all_regions(2)
    assert [z.index for z in zs] == list(range(5))
    assert [str(z) for z in zs] == ["{0}", "(0,1)", "{1}", "(1,2)", "{2}"]
    assert Region.open(1, 2).representative() == Fraction(3, 2)


@given(st.integers(1, 6), st.data())
def test_future_regions_alternate(k, data):
    z = data.draw(st.sampled_from(all_regions(k)))
    fut = future_regions(z)
    assert fut[0] == z and fut[-1] == Region.point(k, k)
    for a, b in zip(fut, fut[1:]):
        assert a.thin != b.thin
        assert b.index == a.index + 1


@given(st.integers(1, 6), st.fractions(min_value=0, max_value=6))
def test_region_of_contains(k, v):
    if v > k:
        return
    z = region_of(v, k)
    assert z.contains(v) and z.closure_contains(v)
