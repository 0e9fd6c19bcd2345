import math

import numpy as np
import pytest

from morsekg.errors import DomainError, ProvenanceMismatch, UnsupportedCaseError
from morsekg.oracle import (
    GridSpec,
    assemble,
    compare_report,
    default_x_max,
    morse_benchmark,
    morse_bound_count,
    morse_levels,
    particle_in_box,
    richardson,
    solve_effective,
    solve_line,
    validate_oracle,
)
from morsekg.potential import MassModel, PotentialSpec, complex_potential_params
from morsekg.spectrum import QuantizedLevel, constant_mass_energy, pdm_energy


def test_grid_validation():
    with pytest.raises(DomainError):
        GridSpec(10.0, 32)
    with pytest.raises(DomainError):
        GridSpec(-1.0)
    g = GridSpec(10.0, 101)
    assert g.h == pytest.approx(0.1)
    assert g.refined().h == pytest.approx(0.05)
    assert g.interior.size == 99


def test_default_x_max():
    assert math.exp(-2.0 * default_x_max(2.0)) == pytest.approx(1e-12)


def test_assembly_is_symmetric_laplacian():
    g = GridSpec(1.0, 65)
    diag, off = assemble(lambda x: np.zeros_like(x), g)
    assert np.allclose(diag, 2 / g.h**2) and np.allclose(off, -1 / g.h**2)
    assert off.size == diag.size - 1


def test_particle_in_box_second_order():
    lowest, ratio = particle_in_box()
    assert lowest == pytest.approx(1.0, rel=1e-4)
    assert 3.5 < ratio < 4.5


def test_richardson_cancels_h2():
    assert richardson(np.array([1.0 + 4e-2]), np.array([1.0 + 1e-2])) == pytest.approx(1.0)


def test_morse_closed_form_helpers():
    # depth 50, beta 1, mass 1/2: sqrt(2 m D)/beta - 1/2 = 6.57
    assert morse_bound_count(50, 1, 0.5) == 7
    assert morse_bound_count(0.01, 1, 0.5) == 0
    assert morse_levels(50, 1, 0.5, 1)[0] == pytest.approx(-50 + math.sqrt(200) / 2 - 0.25)


def test_morse_benchmark_accuracy():
    bench = morse_benchmark(GridSpec(60.0, 4096))
    assert np.all(bench.relative_errors < 1e-6)
    assert len(bench.bound) == bench.expected_bound == 7
    assert np.all(bench.richardson_drift < 1e-4)


def test_tiny_well_has_no_bound_levels():
    bench = morse_benchmark(GridSpec(60.0, 1024), depth=0.01, levels=1, k=3)
    assert bench.bound == []


def test_gauge_shift():
    g = GridSpec(20.0, 1024)
    U = lambda x: 4 * np.exp(-x) - 3 * np.exp(-2 * x)  # noqa: E731
    base = solve_line(U, g, 4).best
    shifted = solve_line(lambda x: U(x) + 1.5, g, 4).best
    np.testing.assert_allclose(shifted, base - 1.5, atol=1e-10)


def test_eigenvalues_sorted():
    sol = solve_line(lambda x: 10 * np.exp(-x), GridSpec(30.0, 512), 8)
    assert np.all(np.diff(sol.eigenvalues) > 0)


def test_solve_line_k_validation():
    with pytest.raises(DomainError):
        solve_line(lambda x: 0 * x, GridSpec(1.0, 64), 0)


def test_validate_oracle_passes():
    report = validate_oracle()
    assert report.passed, report.diagnostics
    assert report.diagnostics == []
    assert [r["n"] for r in report.rows()] == [0, 1, 2]


def test_oracle_rejects_complex_potential():
    with pytest.raises(UnsupportedCaseError):
        solve_effective(complex_potential_params(1.0, 1.0, 0.0), MassModel(1.0), 1.0)


def _toy():
    """A well with a few levels on an O(1) scale."""
    pot = PotentialSpec(-0.2, 1.0, 1.0)
    return pot, MassModel(1.0, 0.0), 0.05


def test_oracle_converges_on_toy_system():
    pot, mass, q_inv = _toy()
    x_max = default_x_max(pot.beta)
    coarse = solve_effective(pot, mass, q_inv, GridSpec(x_max, 2048), k=3)
    fine = solve_effective(pot, mass, q_inv, GridSpec(x_max, 4096), k=3)
    assert np.all(coarse.bound)
    np.testing.assert_allclose(coarse.energies, fine.energies, rtol=1e-6)
    assert all(coarse.energy(n, -1) == -coarse.energy(n) for n in range(3))


def _synthetic(res, count):
    return [QuantizedLevel(n, b, res.energy(n, b), 0j, "synthetic", res.fingerprint)
            for n in range(count) for b in (1, -1)]


def test_compare_report_self_comparison():
    pot, mass, q_inv = _toy()
    res = solve_effective(pot, mass, q_inv, GridSpec(default_x_max(pot.beta), 1024), k=2)
    report = compare_report(_synthetic(res, 2), res, 0.0)
    assert report.all_match
    assert all(r.abs_deviation == 0 for r in report.rows)
    assert [(r.n, r.branch) for r in report.rows] == [(0, 1), (0, -1), (1, 1), (1, -1)]


def test_compare_report_infinite_tolerance():
    pot, mass, q_inv = _toy()
    res = solve_effective(pot, mass, q_inv, GridSpec(default_x_max(pot.beta), 1024), k=2)
    levels = [pdm_energy(n, pot, mass, q_inv, b) for n in range(2) for b in (1, -1)]
    assert compare_report(levels, res, math.inf).all_match


def test_compare_report_missing_level():
    pot, mass, q_inv = _toy()
    res = solve_effective(pot, mass, q_inv, GridSpec(default_x_max(pot.beta), 1024), k=1)
    report = compare_report([pdm_energy(5, pot, mass, q_inv)], res, 1.0)
    assert math.isinf(report.rows[0].abs_deviation)
    assert not report.all_match


def test_compare_report_provenance():
    pot, mass, q_inv = _toy()
    res = solve_effective(pot, mass, q_inv, GridSpec(default_x_max(pot.beta), 512), k=1)
    other = constant_mass_energy(0, pot, mass.m0_energy, q_inv * 2)
    with pytest.raises(ProvenanceMismatch):
        compare_report([other], res, 1.0)


def test_h2_report_documents_disagreement(h2_system):
    pot, mass, q_inv = h2_system
    res = solve_effective(pot, mass, q_inv, k=2)
    report = compare_report([pdm_energy(0, pot, mass, q_inv)], res, 1e-6)
    assert not report.all_match
    assert res.energy(0).real == pytest.approx(469.389, abs=0.01)
