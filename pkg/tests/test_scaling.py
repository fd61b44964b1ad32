from fractions import Fraction

import pytest

from mpgta.bra import build_bra
from mpgta.errors import ScaleEscalationExceeded, TimelockDetected, ValidationError
from mpgta.ptga import MIN, PTGA, ClockConstraint, Edge, Location
from mpgta.solver import integralize_and_solve, value_at
from mpgta.solver.scaling import CYCLES, GAINS, cycle_length_scale, gain_denominator_scale
from randgen import random_ptga

# A random instance whose value has denominator 3.
THIRDS = 54


@pytest.mark.parametrize("recipe", [CYCLES, GAINS])
def test_bias_scale_two(bias, recipe):
    sol = integralize_and_solve(bias, recipe=recipe)
    assert sol.scale == 2 and sol.escalations == 0
    assert sol.gain[sol.graph.initial] == 1
    assert sol.value(sol.graph.initial) == Fraction(1, 2)


def test_recipes_on_corner_graph(bias, selfloop):
    assert cycle_length_scale(build_bra(bias)) == 2
    assert gain_denominator_scale(build_bra(bias)) == 2
    assert cycle_length_scale(build_bra(selfloop)) == 1
    assert gain_denominator_scale(build_bra(selfloop)) == 1


def test_cycle_scale_stops_at_limit():
    g = build_bra(random_ptga(0))
    full = cycle_length_scale(g)
    assert cycle_length_scale(g, limit=1) <= full


def test_selfloop(selfloop):
    sol = integralize_and_solve(selfloop)
    assert sol.scale == 1
    assert value_at(sol, selfloop, "l", 0) == 1


def test_escalation_from_unit_scale():
    p = random_ptga(THIRDS)
    natural = integralize_and_solve(p)
    assert natural.scale == 3 and natural.escalations == 0
    sol = integralize_and_solve(p, scale=1)
    assert sol.scale == 3 and sol.escalations == 1
    assert sol.certificate.ok
    assert value_at(sol, p, p.initial, 0) == value_at(natural, p, p.initial, 0)


def test_escalation_limits(bias):
    with pytest.raises(ScaleEscalationExceeded):
        integralize_and_solve(bias, scale=1, max_escalations=0)
    with pytest.raises(ScaleEscalationExceeded) as exc:
        integralize_and_solve(bias, scale=1, max_scale=1)
    assert exc.value.detail["gain"] == Fraction(1, 2)
    with pytest.raises(ScaleEscalationExceeded):
        integralize_and_solve(bias, max_scale=1)


def test_invalid_input_is_rejected(nonbinary):
    with pytest.raises(ValidationError):
        integralize_and_solve(nonbinary)


def test_timelock_is_rejected():
    inv = ClockConstraint.of([("<=", 1)])
    p = PTGA(1, [Location("a", MIN, 0, inv), Location("b", MIN, 0, inv)],
             [Edge("a", "go", ClockConstraint(), False, "b", 0)], "a")
    with pytest.raises(TimelockDetected):
        integralize_and_solve(p)


def test_scaling_preserves_value(bias):
    base = integralize_and_solve(bias)
    bigger = integralize_and_solve(bias, scale=4)
    assert bigger.scale == 4
    assert bigger.value(bigger.graph.initial) == base.value(base.graph.initial)
