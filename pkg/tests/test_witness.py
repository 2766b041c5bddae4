import numpy as np
import pytest

from conftest import sign_affine_state
from ghzdiag import oracle
from ghzdiag.core import StabCoeffs, random_state
from ghzdiag.models import product_coefficients
from ghzdiag.separability import alpha_state, separable_budget
from ghzdiag.spectra import pt_spectrum
from ghzdiag.witness import (
    WitnessIndex,
    WitnessMethod,
    optimal_witness,
    projector_form,
    witness_coefficients,
    witness_expectation,
)


def test_index_text_roundtrip():
    w = WitnessIndex(3, 0b111, 0b11)
    assert str(w) == "x=111 z=11"
    assert WitnessIndex.parse(str(w)) == w
    assert str(WitnessIndex(4, 1, 0b001)) == "x=1000 z=100"
    with pytest.raises(ValueError):
        WitnessIndex(3, 8, 0)
    with pytest.raises(ValueError):
        WitnessIndex(3, 0, 4)


def test_bell_witness_against_dense():
    bell = StabCoeffs(2, [1, 1, 1, 1])
    w = WitnessIndex(2, 0b11, 1)
    dense = np.trace(oracle.witness_dense(w) @ oracle.state_dense(bell)).real
    assert dense == pytest.approx(-2.0, abs=1e-14)
    assert witness_expectation(bell, w) == pytest.approx(-2.0)


def test_trivial_witness_is_state_sum(rng):
    for _ in range(5):
        s = random_state(4, rng)
        v = witness_expectation(s, WitnessIndex(4, 0, 0))
        assert v == pytest.approx(s.s.sum())
        assert v >= 0


def test_thermal_witness_value():
    t = 0.5
    s = product_coefficients([t] * 3)
    v = witness_expectation(s, WitnessIndex(3, 0b111, 0b11))
    assert v == pytest.approx((1 - t) ** 2 - t * (1 + t) ** 2, abs=1e-15)
    assert v == pytest.approx(-0.875)
    dense = np.trace(oracle.witness_dense(WitnessIndex(3, 0b111, 0b11)) @ oracle.state_dense(s)).real
    assert dense == pytest.approx(-0.875, abs=1e-12)


def test_optimal_witness_thermal():
    w, v, method = optimal_witness(product_coefficients([0.5] * 3))
    assert (w.x, w.z) == (0b111, 0b11)
    assert v == pytest.approx(-0.875)
    assert method is WitnessMethod.SIGN_CONSTRUCTION


def test_optimal_witness_maximally_mixed():
    _, v, _ = optimal_witness(StabCoeffs.maximally_mixed(3))
    assert v == pytest.approx(1.0)


def test_optimal_witness_alpha_family_falls_back_to_scan():
    _, v, method = optimal_witness(alpha_state(3.0))
    assert method is WitnessMethod.GLOBAL_SCAN
    assert v >= 0


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_expectation_equals_pt_eigenvalue(n, rng):
    for _ in range(10):
        s = random_state(n, rng)
        z = int(rng.integers(1 << (n - 1)))
        x = int(rng.integers(1 << n))
        expected = pt_spectrum(s, z).eigenvalues[x] * s.dim
        assert witness_expectation(s, WitnessIndex(n, x, z)) == pytest.approx(expected, abs=1e-9)


def test_projector_form_example():
    pf = projector_form(WitnessIndex(3, 0b111, 0b11))
    assert pf.scale == 4
    assert dict(pf.labelled()) == {"011": 1, "111": 1, "000": -1, "100": 1}


def test_projector_form_degenerate_bipartition():
    pf = projector_form(WitnessIndex(3, 0b001, 0))
    assert sorted(c for _, c in pf.terms) == [0, 2]
    pf = projector_form(WitnessIndex(3, 0, 0))
    assert dict(pf.terms) == {0b000: 2, 0b001: 0}


def test_projector_form_coefficient_pattern(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        w = WitnessIndex(n, int(rng.integers(1 << n)), int(rng.integers(1, 1 << (n - 1))))
        coeffs = sorted(c for _, c in projector_form(w).terms)
        assert coeffs == [-1, 1, 1, 1]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_projector_form_matches_stabilizer_sum(n, rng):
    for _ in range(4):
        w = WitnessIndex(n, int(rng.integers(1 << n)), int(rng.integers(1 << (n - 1))))
        np.testing.assert_allclose(
            oracle.projector_sum_dense(projector_form(w)), oracle.witness_dense(w), atol=1e-12
        )


def _random_product_mixture(n, rng, terms=4):
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=complex)
    for weight in rng.dirichlet(np.ones(terms)):
        locals_ = []
        for _ in range(n):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            locals_.append(v / np.linalg.norm(v))
        psi = oracle.kron_all(v.reshape(2, 1) for v in locals_).ravel()
        rho += weight * np.outer(psi, psi.conj())
    return rho


@pytest.mark.parametrize("n", [2, 3, 4])
def test_witness_sound_on_separable_non_diagonal_states(n, rng):
    for _ in range(10):
        rho = _random_product_mixture(n, rng)
        s = oracle.coefficients_dense(rho, n)
        for z in range(1 << (n - 1)):
            for x in range(1 << n):
                assert witness_expectation(s, WitnessIndex(n, x, z)) >= -1e-12


def test_witness_coefficients_are_signs(rng):
    w = WitnessIndex(5, 13, 6)
    c = witness_coefficients(w)
    assert set(np.unique(c)) <= {-1.0, 1.0}


def test_optimal_value_equals_budget_when_entangled(rng):
    seen = 0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        s, _, _ = sign_affine_state(n, rng)
        budget = separable_budget(s)
        if budget >= -1e-8:
            continue
        seen += 1
        _, v, method = optimal_witness(s)
        assert method is WitnessMethod.SIGN_CONSTRUCTION
        assert v == pytest.approx(budget, abs=1e-10)
    assert seen > 10
