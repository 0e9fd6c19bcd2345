import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from morsekg.errors import DomainError, UnsupportedCaseError
from morsekg.potential import (
    MassModel,
    PotentialSpec,
    complex_potential_params,
    effective_line_potential,
    line_coefficients,
    morse_from_dissociation,
    reduce,
    spectral_scale,
)

from .conftest import random_real_system

finite = dict(allow_nan=False, allow_infinity=False)
nonzero = st.floats(-5, 5, **finite).filter(lambda v: abs(v) > 1e-3)


def test_morse_map():
    pot = morse_from_dissociation(4.74459)
    assert pot.v1 == 4.74459 and pot.v2 == 9.48918
    unit = morse_from_dissociation(1.0)
    assert (unit.v1, unit.v2) == (1, 2)
    assert unit(0.0) == -1.0


def test_morse_minimum_at_origin():
    pot = morse_from_dissociation(3.0, beta=1.7)
    h = 1e-6
    slope = (pot(h) - pot(-h)) / (2 * h)
    assert abs(slope) < 1e-8
    assert pot(0.0).real == pytest.approx(-3.0)
    with pytest.raises(DomainError):
        morse_from_dissociation(0.0)


@pytest.mark.parametrize("u, v1, v2", [
    ((1, 0, 0), 1, 1),
    ((0, 1, 0), -1, 1j),
    ((1, 1, 1), 2j, 3 + 3j),
])
def test_complex_parameterization(u, v1, v2):
    pot = complex_potential_params(*u)
    assert pot.v1 == pytest.approx(v1)
    assert pot.v2 == pytest.approx(v2)
    assert pot.beta == 1.0


@given(st.floats(-3, 3, **finite).filter(lambda v: abs(v) > 1e-100), st.floats(-3, 3, **finite))
def test_complex_parameterization_real_limit(u1, u3):
    pot = complex_potential_params(u1, 0.0, u3)
    assert pot.v1.imag == 0 and pot.v2.imag == 0
    assert pot.is_real


def test_complex_parameterization_rejects_zero():
    with pytest.raises(DomainError):
        complex_potential_params(0.0, 0.0, 1.0)


def test_spec_invariants():
    with pytest.raises(DomainError):
        PotentialSpec(1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        PotentialSpec(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        MassModel(0.0, 0.0)
    with pytest.raises(DomainError):
        MassModel(1.0, -1.0)
    MassModel(1.0, -0.5)


def test_reduce_zero_factors():
    rp = reduce(PotentialSpec(1.3, 0.0, 1.0), MassModel(2.0, 0.0), 0.7, 3.0)
    assert rp.a2 == 0 and rp.a4 == 0


def test_reduce_special_case_condition():
    rp = reduce(PotentialSpec(1.3, 0.4, 1.0), MassModel(2.0, 0.4), 0.7, 3.0)
    assert rp.a2 == 0 and rp.a4 == 0


@given(nonzero, st.floats(-5, 5, **finite), st.floats(0.1, 5), st.floats(0.1, 3))
def test_q_is_minus_Q_V1(v1, v2, m0, q_inv):
    rp = reduce(PotentialSpec(v1, v2, 1.0), MassModel(m0, 0.0), q_inv, m0)
    assert rp.q == pytest.approx(-v1 / q_inv, rel=1e-15)


@settings(max_examples=200)
@given(nonzero, nonzero, nonzero, nonzero, st.floats(0.5, 5), st.floats(-0.4, 1), st.floats(0.1, 3))
def test_sign_contract(v1r, v1i, v2r, v2i, m0, m1_frac, q_inv):
    pot = PotentialSpec(complex(v1r, v1i), complex(v2r, v2i), 1.0)
    mass = MassModel(m0, m1_frac * m0)
    rp = reduce(pot, mass, q_inv, 1.0 + 0.5j)
    assert abs(rp.q ** 2 - rp.a5) <= 1e-12 * abs(rp.a5)
    scale = 2 * abs(rp.p) * abs(rp.q)
    assert abs(2 * rp.p * rp.q - rp.a4) <= 1e-12 * max(scale, 1e-300)
    literal = reduce(pot, mass, q_inv, 1.0 + 0.5j, signs="printed")
    assert literal.q == rp.q and literal.p == -rp.p
    assert abs(2 * literal.p * literal.q + rp.a4) <= 1e-12 * max(scale, 1e-300)


def test_a1_is_L_squared_plus_quarter():
    rp = reduce(PotentialSpec(1.0, 0.5, 1.0), MassModel(2.0, 0.1), 0.5, 3.0)
    L2 = (3.0**2 - 2.0**2) / 0.5**2
    assert rp.a1 == pytest.approx(L2 + 0.25)
    assert rp.energy_dependent


def test_line_coefficients_match_symbolic_expansion():
    E, m0, m1, v1, v2, z = sp.symbols("E m0 m1 V1 V2 z")
    bracket = sp.expand(E**2 - (m0 + m1 * z + v1 * z**2 - v2 * z) ** 2)
    poly = sp.Poly(bracket, z)
    values = {E: 1.7, m0: 1.3, m1: 0.2, v1: 0.9, v2: -0.45}
    c1, c2, c3, c4 = line_coefficients(PotentialSpec(0.9, -0.45, 1.0), MassModel(1.3, 0.2))
    coeff = [float(poly.coeff_monomial(z**k).subs(values)) for k in range(5)]
    assert coeff[0] == pytest.approx(1.7**2 - 1.3**2)
    assert coeff[1] == pytest.approx(c1)
    assert coeff[2] == pytest.approx(-c2)
    assert coeff[3] == pytest.approx(c3)
    assert coeff[4] == pytest.approx(-c4)


def test_expansion_consistency(rng):
    """Direct (E^2 - (m c^2 + V_s)^2) vs the collected four-term expansion."""
    for _ in range(200):
        pot, mass, q_inv = random_real_system(rng)
        E = rng.uniform(0.5, 3.0)
        x = rng.uniform(0.0, 5.0)
        scale = spectral_scale(pot, q_inv)
        direct = scale * (E**2 - (mass(x, pot.beta) + pot(x).real) ** 2)
        lam = scale * (E**2 - mass.m0_energy**2)
        U = effective_line_potential(pot, mass, q_inv)
        collected = lam + U(x)
        z = np.exp(-pot.beta * x)
        c = line_coefficients(pot, mass)
        magnitude = scale * (E**2 + mass.m0_energy**2 + sum(abs(ck) * z ** (k + 1) for k, ck in enumerate(c)))
        assert abs(direct - collected) <= 1e-12 * magnitude


def test_free_particle_potential_vanishes():
    pot = PotentialSpec(1e-300, 0.0, 1.0)
    U = effective_line_potential(pot, MassModel(1.0, 0.0), 1.0)
    assert np.all(np.abs(U(np.linspace(0, 10, 11))) < 1e-290)


def test_tail_decays_monotonically(h2_system):
    pot, mass, q_inv = h2_system
    U = effective_line_potential(pot, mass, q_inv)
    x = np.linspace(5, 40, 200)
    tail = np.abs(U(x))
    assert np.all(np.diff(tail) < 0)
    assert tail[-1] < 1e-12 * abs(U(0.0))


def test_value_at_origin():
    pot, mass, q_inv = PotentialSpec(0.9, -0.45, 1.2), MassModel(1.3, 0.2), 0.8
    U = effective_line_potential(pot, mass, q_inv)
    # at x = 0: E^2 - (m0 + m1 + V1 - V2)^2 - (E^2 - m0^2)
    expected = spectral_scale(pot, q_inv) * (1.3**2 - (1.3 + 0.2 + 0.9 + 0.45) ** 2)
    assert U(0.0) == pytest.approx(expected, rel=1e-14)


def test_complex_potential_unsupported_in_line_form():
    with pytest.raises(UnsupportedCaseError):
        effective_line_potential(complex_potential_params(1, 1, 0), MassModel(1.0), 1.0)


def test_printed_sign_mode_validation():
    with pytest.raises(DomainError):
        reduce(PotentialSpec(1, 1, 1), MassModel(1.0), 1.0, 1.0, signs="other")
