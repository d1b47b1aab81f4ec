import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xygates.pulse import (
    PulseGate,
    Schedule,
    inverse,
    normalize_phase,
    p3,
    pulse,
    schedule_unitary,
    simplify,
    simulate,
)
from xygates.simcore import apply_xy_pulse, basis_state, bits_of
from xygates.verifier import oracle_schedule_unitary
from conftest import random_schedule

PI = math.pi


@pytest.mark.parametrize(
    "phi,expected",
    [(0.0, 0.0), (PI, PI), (-PI, PI), (3 * PI, PI), (2 * PI, 0.0), (-0.5, -0.5), (7.0, 7.0 - 2 * PI)],
)
def test_normalize_phase(phi, expected):
    assert normalize_phase(phi) == pytest.approx(expected, abs=1e-15)


def test_gate_canonical_form():
    g = PulseGate(3, 1, -PI)
    assert g.pair == (1, 3)
    assert g.phi == PI
    assert math.copysign(1, PulseGate(0, 1, -0.0).phi) == 1
    with pytest.raises(ValueError):
        PulseGate(1, 1, 0.1)
    with pytest.raises(ValueError):
        PulseGate(0, 1, float("nan"))


def test_schedule_index_check():
    with pytest.raises(IndexError):
        Schedule(2, (PulseGate(0, 2, 0.1),))


def test_p3_layout():
    s = p3(0, 1, 2, 0.8)
    assert [(g.pair, g.phi) for g in s] == [
        ((0, 1), PI / 4),
        ((1, 2), PI / 2),
        ((0, 2), 0.4),
        ((1, 2), -PI / 2),
        ((0, 1), -PI / 4),
    ]
    with pytest.raises(ValueError):
        p3(0, 1, 1, 0.3)


@pytest.mark.parametrize("phi", [PI / 7, 1.0, -2.3])
def test_p3_phase_table(phi):
    table = {
        "010": np.exp(0.5j * phi),
        "100": np.exp(-0.5j * phi),
        "011": np.exp(-0.5j * phi),
        "101": np.exp(0.5j * phi),
    }
    for idx in range(8):
        label = bits_of(idx, 3)
        out = simulate(p3(0, 1, 2, phi), basis_state(label))
        np.testing.assert_allclose(out, table.get(label, 1.0) * basis_state(label), atol=1e-12)


def test_p3_spectators_and_permuted_roles():
    # roles (a, b, c) = (3, 0, 2) inside 4 qubits; qubit 1 is a spectator
    phi = 0.9
    u = schedule_unitary(p3(3, 0, 2, phi))
    for idx in range(16):
        bits = bits_of(idx, 4)
        key = bits[3] + bits[0] + bits[2]
        phase = {"010": 0.5, "101": 0.5, "100": -0.5, "011": -0.5}.get(key, 0.0) * phi
        assert abs(u[idx, idx] - np.exp(1j * phase)) < 1e-12
    assert np.max(np.abs(u - np.diag(np.diag(u)))) < 1e-12


def test_p3_zero_is_identity():
    np.testing.assert_allclose(schedule_unitary(p3(0, 1, 2, 0.0)), np.eye(8), atol=1e-12)


def test_p3_single_excitation_sector():
    phi = 1.3
    u = schedule_unitary(p3(0, 1, 2, phi))
    sector = [4, 2, 1]  # |100>, |010>, |001>
    block = u[np.ix_(sector, sector)]
    np.testing.assert_allclose(block, np.diag(np.exp(1j * np.array([-phi / 2, phi / 2, 0]))), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-6, 6), st.floats(-6, 6))
def test_p3_phases_add(phi1, phi2):
    lhs = schedule_unitary(p3(0, 1, 2, phi1) + p3(0, 1, 2, phi2))
    rhs = schedule_unitary(p3(0, 1, 2, phi1 + phi2))
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_simulate_basics(rng):
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    np.testing.assert_array_equal(simulate(Schedule(3), psi), psi)
    np.testing.assert_allclose(simulate(pulse(0, 2, 0.4, 3), psi), apply_xy_pulse(psi, 0, 2, 0.4), atol=1e-15)
    out = simulate(p3(0, 1, 2, 0.7), basis_state("010"))
    np.testing.assert_allclose(out, np.exp(0.35j) * basis_state("010"), atol=1e-12)
    with pytest.raises(ValueError):
        simulate(Schedule(3), np.ones(2) / np.sqrt(2))


def test_schedule_unitary_matches_independent_product(rng):
    for _ in range(30):
        s = random_schedule(rng)
        assert np.max(np.abs(schedule_unitary(s) - oracle_schedule_unitary(s))) < 1e-10


def test_schedule_unitary_basics(rng):
    np.testing.assert_array_equal(schedule_unitary(Schedule(2)), np.eye(4))
    s = random_schedule(rng, n=4, length=10)
    u = schedule_unitary(s + inverse(s))
    assert np.max(np.abs(u - np.eye(16))) < 1e-12
    d = schedule_unitary(p3(0, 1, 2, 1.7))
    assert np.max(np.abs(d - np.diag(np.diag(d)))) < 1e-12


def test_inverse():
    phi = 0.77
    u = oracle_schedule_unitary(inverse(p3(0, 1, 2, phi)))
    v = oracle_schedule_unitary(p3(0, 1, 2, -phi))
    assert np.max(np.abs(u - v)) < 1e-12
    assert inverse(Schedule(3)) == Schedule(3)
    s = p3(2, 0, 1, 0.3)
    assert inverse(inverse(s)).gates == s.gates


def test_simplify_examples():
    s = Schedule(2, (PulseGate(0, 1, -PI / 4), PulseGate(0, 1, PI / 4)))
    assert len(simplify(s)) == 0
    s = p3(0, 1, 2, -PI / 4) + p3(0, 1, 3, PI / 4)
    assert len(s) == 10
    assert len(simplify(s)) == 8
    once = simplify(s)
    assert simplify(once) == once


def test_simplify_cascades():
    # a zero-angle P3 collapses completely once its centre vanishes
    assert len(simplify(p3(0, 1, 2, 0.0))) == 0


def test_simplify_preserves_unitary(rng):
    for _ in range(500):
        s = random_schedule(rng)
        t = simplify(s)
        assert len(t) <= len(s)
        assert np.max(np.abs(schedule_unitary(s) - schedule_unitary(t))) < 1e-12
        for a, b in zip(t.gates, t.gates[1:]):
            assert a.pair != b.pair
        assert all(-PI < g.phi <= PI for g in t)
