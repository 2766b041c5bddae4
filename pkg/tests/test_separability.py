import math

import numpy as np
import pytest

from conftest import brute_force_sign_vector, sign_affine_state
from ghzdiag import oracle
from ghzdiag.core import StabCoeffs, parity, random_state
from ghzdiag.models import DepolarizingParams, depolarized_s, product_coefficients
from ghzdiag.separability import (
    REPORTED_SDP_ENTANGLED_ALPHA,
    Verdict,
    alpha_state,
    casebook_alpha,
    certify,
    decompose,
    even_sector_min,
    find_sign_vector,
    odd_sector_l1,
    rewrite_check,
    separable_budget,
    three_qubit_sign_criterion,
)
from ghzdiag.spectra import npt_scan


def _enumerate_even_min(s):
    half = s.dim // 2
    vals = [sum(s.even[y] * (-1) ** parity(x & y) for y in range(half)) for x in range(half)]
    return min(vals), int(np.argmin(vals))


def test_even_sector_min_examples():
    th = product_coefficients([0.5] * 3)
    assert _enumerate_even_min(th) == (pytest.approx(0.25), 0b11)
    assert even_sector_min(th) == (pytest.approx(0.25), 0b11)
    assert even_sector_min(StabCoeffs.maximally_mixed(4)) == (pytest.approx(1.0), 0)
    dep = depolarized_s(DepolarizingParams(0.5, 3))
    val, xt = even_sector_min(dep)
    assert val == pytest.approx(0.75)
    assert bin(xt).count("1") == 1
    assert _enumerate_even_min(dep)[0] == pytest.approx(0.75)


def test_odd_sector_l1_examples():
    assert odd_sector_l1(product_coefficients([0.5] * 3)) == pytest.approx(0.5 * 1.5**2)
    assert odd_sector_l1(StabCoeffs.maximally_mixed(3)) == 0
    assert odd_sector_l1(depolarized_s(DepolarizingParams(0.5, 3))) == pytest.approx(0.5)


def test_budget_examples():
    assert separable_budget(product_coefficients([0.5] * 3)) == pytest.approx(-0.875)
    t = math.sqrt(2) - 1
    assert separable_budget(product_coefficients([t, t])) == pytest.approx(0, abs=1e-15)
    assert separable_budget(StabCoeffs.maximally_mixed(3)) == pytest.approx(1.0)


def test_sign_vector_positive_odd_sector():
    sv = find_sign_vector(product_coefficients([0.3] * 5))
    assert sv.exists and sv.z_tilde == 0 and sv.reference_sign == 1


def test_sign_vector_alternating_in_first_bit():
    n = 4
    s = np.full(1 << n, 0.05)
    s[0] = 1
    for yt in range(1 << (n - 1)):
        s[1 | (yt << 1)] = 0.05 * (-1) ** (yt & 1)
    sv = find_sign_vector(StabCoeffs(n, s))
    assert sv.exists and sv.z_tilde == 0b001


def test_sign_vector_fails_for_alpha_family():
    assert not find_sign_vector(alpha_state(3.0)).exists
    assert not three_qubit_sign_criterion(alpha_state(3.0))


def test_sign_vector_free_reference_sign():
    # s_{10...0} = 0 and the remaining odd entries only fit with sigma = -1
    s = np.zeros(8)
    s[0] = 1
    s[0b011] = -0.1
    s[0b101] = -0.1
    s[0b111] = -0.1
    sv = find_sign_vector(StabCoeffs(3, s))
    assert sv.exists
    assert brute_force_sign_vector(StabCoeffs(3, s)).exists


def test_sign_vector_zero_odd_sector():
    sv = find_sign_vector(StabCoeffs.maximally_mixed(4))
    assert sv.exists and sv.z_tilde == 0


def test_sign_vector_ignores_roundoff_entries():
    s = np.array(product_coefficients([0.2] * 3).s)
    s[0b101] = -1e-15
    assert find_sign_vector(StabCoeffs(3, s)).exists


@pytest.mark.parametrize("n", range(2, 11))
def test_gf2_agrees_with_brute_force(n, rng):
    for _ in range(6):
        s, _, _ = sign_affine_state(n, rng, zero_fraction=rng.uniform(0, 0.6))
        fast, brute = find_sign_vector(s), brute_force_sign_vector(s)
        assert fast.exists and brute.exists
        # any random sign pattern
        odd = rng.choice([-1.0, 0.0, 1.0], size=1 << (n - 1), p=[0.45, 0.1, 0.45]) * 0.01
        v = np.array(s.s)
        v[1::2] = odd
        t = StabCoeffs(n, v)
        assert find_sign_vector(t).exists == brute_force_sign_vector(t).exists


def test_three_qubit_product_criterion_matches_sign_test(rng):
    for _ in range(200):
        s = np.array(random_state(3, rng).s)
        if np.min(np.abs(s[1::2])) < 1e-6:
            continue
        st = StabCoeffs(3, s)
        assert three_qubit_sign_criterion(st) == find_sign_vector(st).exists


def test_certify_examples():
    sep = certify(product_coefficients([0.1] * 3))
    assert sep.verdict is Verdict.FULLY_SEPARABLE
    assert sep.budget == pytest.approx(0.9**2 - 0.1 * 1.1**2)
    assert sep.budget == pytest.approx(0.689)
    ent = certify(product_coefficients([0.5] * 3))
    assert ent.verdict is Verdict.ENTANGLED_NPT
    assert str(ent.witness) == "x=111 z=11"
    assert ent.witness_value == pytest.approx(-0.875)
    assert certify(alpha_state(3.0)).verdict is Verdict.UNDETERMINED


def test_certificate_serialization():
    lines = certify(product_coefficients([0.5] * 3)).lines()
    assert lines[0] == "ENTANGLED_NPT"
    assert all("=" in line for line in lines[1:])
    assert "witness=x=111 z=11 value=-0.875" in lines
    lines = certify(product_coefficients([0.1] * 3)).lines()
    assert lines[0] == "FULLY_SEPARABLE"
    assert any(line.startswith("group=identity") for line in lines)


def test_certify_scan_fallback_finds_npt():
    # sign test fails, budget negative, yet NPT: Bell-like mixture with mixed odd signs
    s = np.ones(8) * 0.9
    s[0] = 1
    s[0b101] = -0.9
    st = StabCoeffs(3, s)
    if npt_scan(st).is_npt:
        cert = certify(st)
        assert cert.verdict is Verdict.ENTANGLED_NPT and cert.witness_value < 0


def test_certify_refused_scan_is_undetermined():
    cert = certify(alpha_state(2.5), scan_cap=2)
    assert cert.verdict is Verdict.UNDETERMINED
    assert "cap" in cert.note


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_decomposition_groups_are_positive(n, rng):
    checked = 0
    for _ in range(40):
        base = random_state(n, rng)
        shrink = np.full(base.dim, rng.uniform(0.02, 0.4))
        shrink[0] = 1.0
        s = StabCoeffs(n, base.s * shrink)
        cert = certify(s)
        if cert.verdict is not Verdict.FULLY_SEPARABLE:
            continue
        checked += 1
        total = np.zeros((s.dim, s.dim), dtype=complex)
        for _, coeffs in cert.decomposition.groups():
            op = oracle.operator_from_coefficients(coeffs, n)
            assert np.linalg.eigvalsh(op).min() >= -1e-9
            total += op
        np.testing.assert_allclose(total / s.dim, oracle.state_dense(s), atol=1e-12)
    assert checked > 0


def test_decomposition_pair_groups_have_product_eigenbasis():
    d = decompose(product_coefficients([0.2] * 3))
    assert len(d.pair_terms) == 4
    assert d.identity_surplus == pytest.approx(separable_budget(product_coefficients([0.2] * 3)))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_threshold_coincidence(n, rng):
    for _ in range(20):
        s, _, _ = sign_affine_state(n, rng)
        b = separable_budget(s)
        rep = npt_scan(s)
        if b < -1e-8:
            assert rep.is_npt
        elif b > 1e-8:
            assert not rep.is_npt


def test_alpha_state_coefficients():
    s = alpha_state(3.0)
    expected = np.full(8, 0.25)
    expected[0] = 1
    expected[0b101] = -0.25
    np.testing.assert_array_equal(s.s, expected)
    rho = (oracle.kron_all([np.eye(2)] * 3) * 0).astype(complex)
    prod = np.eye(8, dtype=complex)
    for k in range(3):
        prod = prod @ (np.eye(8) + oracle.pauli_dense_index(1 << k, 3))
    rho = (prod - 2 * oracle.pauli_dense_index(0b101, 3) + 3.0 * np.eye(8)) / (8 * 4.0)
    np.testing.assert_allclose(oracle.state_dense(s), rho, atol=1e-14)


def test_casebook_boundaries():
    at2 = casebook_alpha(2.0)
    assert at2.valid and at2.min_eigenvalue == pytest.approx(0, abs=1e-15)
    assert at2.ppt_all
    assert at2.verdict is Verdict.UNDETERMINED
    root = casebook_alpha(2 * math.sqrt(2))
    assert root.improved_separable and not root.naive_separable
    assert root.improved_budget == pytest.approx(0, abs=1e-12)
    five = casebook_alpha(5.0)
    assert five.naive_separable and five.certificate.verdict is Verdict.FULLY_SEPARABLE
    assert not casebook_alpha(1.5).valid and casebook_alpha(1.5).verdict is None
    assert at2.reported_sdp_entangled_alpha == REPORTED_SDP_ENTANGLED_ALPHA == 2.828


def test_rewrite_identity():
    chk = rewrite_check()
    assert chk.residual <= 1e-12
    assert chk.weight == pytest.approx(2 * math.sqrt(2), abs=1e-10)
    lo, hi = chk.term_extremes
    assert lo == pytest.approx(-2 * math.sqrt(2), abs=1e-10)
    assert hi == pytest.approx(2 * math.sqrt(2), abs=1e-10)
    # the operator itself is tighter than its product-basis rewrite
    assert chk.operator_extremes == (pytest.approx(-2, abs=1e-10), pytest.approx(2, abs=1e-10))
