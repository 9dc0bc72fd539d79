import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from grover_rel.classical import (ClassicalState, classical_collide,
                                  classical_energy, classical_momentum,
                                  classical_transfer)
from grover_rel.collision import NoApproachError
from grover_rel.kinematics import DomainError
from grover_rel.transfer import Termination


def test_equal_mass_exchange():
    out = classical_collide(ClassicalState(0.7, -0.2, 1))
    assert (out.v_big, out.v_small) == (-0.2, 0.7)


def test_hand_example():
    out = classical_collide(ClassicalState(1.0, -1.0, 3))
    assert (out.v_big, out.v_small) == (0.0, 2.0)
    assert classical_energy(out) == 2.0


def test_immovable_wall_limit():
    out = classical_collide(ClassicalState(0.3, -0.5, 1e12))
    assert out.v_small == pytest.approx(2 * 0.3 + 0.5, rel=1e-9)


def test_no_approach():
    with pytest.raises(NoApproachError):
        classical_collide(ClassicalState(0.1, 0.2, 4))


@given(st.floats(1, 1e9), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_conservation(M, v1, v2):
    v1, v2 = max(v1, v2), min(v1, v2)
    assume(v1 > v2)
    s = ClassicalState(v1, v2, M)
    out = classical_collide(s)
    e0 = classical_energy(s)
    assert classical_energy(out) == pytest.approx(e0, rel=1e-12)
    p0 = classical_momentum(s)
    assert abs(classical_momentum(out) - p0) <= 1e-12 * (abs(p0) + 1) * max(
        1.0, abs(v1) + abs(v2)) * M
    assert out.v_small >= out.v_big


def test_transfer_n2():
    out = classical_transfer(2, 0.5)
    assert out.steps_to_max == 0
    assert out.max_fraction == 0.5
    assert out.termination is Termination.FIRST_MAX_FOUND


def test_transfer_n100():
    out = classical_transfer(100, 0.01)
    assert abs(out.steps_to_max - round(math.pi / 4 * 10)) <= 1


@pytest.mark.parametrize("N", [3, 17, 100, 1000, 4321])
def test_scale_invariance(N):
    a = classical_transfer(N, 0.3, record_trajectory=True)
    b = classical_transfer(N, 1e-6, record_trajectory=True)
    assert a.steps_to_max == b.steps_to_max
    for p, q in zip(a.trajectory, b.trajectory):
        assert p.state.v_big / 0.3 == pytest.approx(q.state.v_big / 1e-6,
                                                     rel=1e-12, abs=1e-12)
        assert p.state.v_small / 0.3 == pytest.approx(q.state.v_small / 1e-6,
                                                      rel=1e-12)


@pytest.mark.parametrize("N", [1e4, 1e5, 1e6])
def test_asymptote(N):
    ratio = classical_transfer(N, 1.0).steps_to_max / (math.pi / 4 * math.sqrt(N))
    assert 0.9 <= ratio <= 1.1


def test_iteration_limit():
    out = classical_transfer(1e4, 1.0, max_iter=10)
    assert out.termination is Termination.ITERATION_LIMIT
    assert out.steps_to_max == 10


def test_validation():
    with pytest.raises(DomainError):
        classical_transfer(1.5, 0.1)
    with pytest.raises(DomainError):
        classical_transfer(10, 0.0)
