import numpy as np
import pytest

from ghzdiag.core import StabCoeffs, parity, parity_signs
from ghzdiag.separability import SignVector
from ghzdiag.spectra import fwht


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def naive_walsh(v):
    """O(4^k) reference for the Walsh-Hadamard transform."""
    v = np.asarray(v, dtype=float)
    n = v.size
    return np.array([sum((-1) ** parity(x & y) * v[y] for y in range(n)) for x in range(n)])


def sign_affine_state(n, rng, zero_fraction=0.0):
    """Random valid state whose odd sector satisfies the sign condition.

    Starts from a random GHZ-diagonal state, replaces the odd sector by
    ``c * sigma * (-1)^{z~.y~} * |m|`` and scales ``c`` below the largest
    value that keeps every eigenvalue non-negative.
    """
    lam = rng.dirichlet(np.ones(1 << n))
    s = fwht(lam)
    s[0] = 1.0
    even_eigs = fwht(s[0::2])
    half = 1 << (n - 1)
    zt = int(rng.integers(half))
    sigma = int(rng.choice([1, -1]))
    mags = rng.random(half)
    mags[rng.random(half) < zero_fraction] = 0.0
    if not mags.any():
        mags[0] = 1.0
    direction = sigma * parity_signs(np.arange(half) & zt) * mags
    odd_eigs = np.abs(fwht(direction))
    with np.errstate(divide="ignore"):
        cmax = np.min(np.where(odd_eigs > 0, even_eigs / odd_eigs, np.inf))
    s[1::2] = rng.uniform(0.0, 1.0) * cmax * direction
    return StabCoeffs(n, s), zt, sigma


def brute_force_sign_vector(state, eps_sign=1e-12):
    odd = np.where(np.abs(state.odd) > eps_sign, state.odd, 0.0)
    for sigma in (1, -1):
        if odd[0] != 0 and sigma * odd[0] < 0:
            continue
        for z in range(1 << (state.n_qubits - 1)):
            if all(sigma * v * (-1) ** parity(z & yt) >= 0 for yt, v in enumerate(odd)):
                return SignVector(True, z, sigma)
    return SignVector(False, None, 1)


def dense_depolarize(rho, n_qubits, p):
    """Apply the single-qubit depolarizing channel to every qubit of a dense state."""
    from ghzdiag.oracle import PAULI, kron_all

    for q in range(n_qubits):
        mixed = np.zeros_like(rho)
        for label in "IXYZ":
            op = kron_all(PAULI[label] if k == q else PAULI["I"] for k in range(n_qubits))
            mixed += op @ rho @ op.conj().T
        rho = (1 - p) * rho + p / 4 * mixed
    return rho
