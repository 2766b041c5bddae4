"""Noise models on the GHZ state and their PPT / separability thresholds.

Units follow ``hbar = k_B = 1`` with the coupling ``Delta`` as energy unit.
Every threshold equation here is monotone on its bracket, so all roots are
found by plain bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .core import StabCoeffs, support
from .witness import WitnessIndex, witness_expectation

BETA_BRACKET = (1e-12, 200.0)
P_BRACKET = (1e-12, 1.0 - 1e-12)
RTOL = 1e-12
MAXITER = 200


def _root(f, lo: float, hi: float) -> float:
    return bisect(f, lo, hi, rtol=RTOL, xtol=1e-300, maxiter=MAXITER)


@dataclass(frozen=True)
class ThermalParams:
    beta: float
    deltas: tuple[float, ...]

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        if len(self.deltas) < 2 or min(self.deltas) <= 0:
            raise ValueError("need at least two positive couplings")


@dataclass(frozen=True)
class PerturbedParams:
    n_qubits: int
    beta: float
    gap: float
    field: float

    def __post_init__(self):
        if self.gap <= 0 or self.field < 0 or self.beta < 0:
            raise ValueError("need gap > 0, field >= 0, beta >= 0")


@dataclass(frozen=True)
class DepolarizingParams:
    p: float
    n_qubits: int

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")


def product_coefficients(t) -> StabCoeffs:
    """``s[y] = prod_n t_n ** y_n`` for per-qubit factors ``t``."""
    s = np.ones(1)
    for tn in t:
        # qubit n becomes the next more significant bit
        s = np.concatenate([s, tn * s])
    return StabCoeffs(len(t), s)


def thermal_s(tp: ThermalParams) -> StabCoeffs:
    return product_coefficients([math.tanh(0.5 * tp.beta * d) for d in tp.deltas])


def dephasing_s(p_list) -> StabCoeffs:
    """Local dephasing with probability ``p_n`` on qubit ``n``; same as ``t_n = 1 - 2 p_n``."""
    p = np.asarray(p_list, dtype=float)
    if np.any(p < 0) or np.any(p > 0.5):
        raise ValueError("dephasing probabilities must lie in [0, 1/2]")
    return product_coefficients(1.0 - 2.0 * p)


def thermal_critical_beta(deltas) -> float:
    """Root of ``tanh(beta D_1 / 2) = exp(-beta sum_{n>=2} D_n)``."""
    deltas = [float(d) for d in deltas]
    if len(deltas) < 2 or min(deltas) <= 0:
        raise ValueError("need at least two positive couplings")
    rest = sum(deltas[1:])
    return _root(lambda b: math.tanh(0.5 * b * deltas[0]) - math.exp(-b * rest), *BETA_BRACKET)


def thermal_critical_temperature(n_qubits: int, gap: float = 1.0) -> float:
    return 1.0 / thermal_critical_beta([gap] * n_qubits)


def perturbed_critical_beta(n_qubits: int, gap: float, field: float) -> float:
    """Inverse temperature where the unperturbed optimal witness stops firing.

    Solves ``gap/r * tanh(beta r / 2) = tanh(beta_0 gap / 2)`` with
    ``r = hypot(gap, field)``. The result upper-bounds the true critical
    ``beta``. Returns ``math.inf`` when the left side saturates below the
    target, i.e. the witness never fires at any temperature.
    """
    if gap <= 0 or field < 0:
        raise ValueError("need gap > 0 and field >= 0")
    beta0 = thermal_critical_beta([gap] * n_qubits)
    target = math.tanh(0.5 * beta0 * gap)
    r = math.hypot(gap, field)
    if gap / r <= target:
        return math.inf

    def g(b):
        return gap / r * math.tanh(0.5 * b * r) - target

    hi = BETA_BRACKET[1]
    while g(hi) <= 0:
        hi *= 2
    return _root(g, BETA_BRACKET[0], hi)


def perturbed_projection_s(pp: PerturbedParams) -> StabCoeffs:
    """GHZ-diagonal part of the field-perturbed thermal state."""
    r = math.hypot(pp.gap, pp.field)
    t = math.tanh(0.5 * pp.beta * r) * pp.gap / r
    return product_coefficients([t] * pp.n_qubits)


def perturbed_witness_expectation(pp: PerturbedParams) -> float:
    """Value of the unperturbed optimal witness (``x = 1...1``, ``z = 1...1``)."""
    n = pp.n_qubits
    w = WitnessIndex(n, (1 << n) - 1, (1 << (n - 1)) - 1)
    return witness_expectation(perturbed_projection_s(pp), w)


def depolarized_s(dp: DepolarizingParams) -> StabCoeffs:
    """Each qubit depolarized with probability ``p``: ``s[y] = (1 - p) ** support(y)``."""
    n = dp.n_qubits
    q = 1.0 - dp.p
    return StabCoeffs(n, [q ** support(y, n) for y in range(1 << n)])


def depolarizing_even_closed_form(p: float, n_qubits: int, weight: int) -> float:
    """Even-sector eigenvalue at any ``x~`` of Hamming weight ``weight``."""
    if not 0 <= weight <= n_qubits - 1:
        raise ValueError("weight must lie in [0, N-1]")
    a, w, n = 2.0 - p, weight, n_qubits
    return 0.5 * a**w * p ** (n - w) + 0.5 * a ** (n - w) * p**w


def depolarizing_critical_p(n_qubits: int) -> float:
    """Root of ``((2 - p) p) ** floor(N/2) = 2**(N-1) (1 - p)**N``."""
    if n_qubits < 2:
        raise ValueError("need N >= 2")
    m = n_qubits // 2
    return _root(
        lambda p: ((2.0 - p) * p) ** m - 2.0 ** (n_qubits - 1) * (1.0 - p) ** n_qubits, *P_BRACKET
    )


def dephasing_critical_p(n_qubits: int) -> float:
    """Root of ``1 - 2p = (p / (1 - p)) ** (N - 1)``."""
    if n_qubits < 2:
        raise ValueError("need N >= 2")
    return _root(lambda p: 1.0 - 2.0 * p - (p / (1.0 - p)) ** (n_qubits - 1), 1e-12, 0.5)

