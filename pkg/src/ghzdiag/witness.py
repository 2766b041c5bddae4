"""Entanglement witnesses ``W_{x,z}`` that saturate the PPT bound.

``W_{x,z} = sum_y (-1)^{x.y} (-1)^{y_1 (y~ . z)} K_y``, so for any state with
stabilizer expectations ``s`` the measured value is exactly the
unnormalized partial-transpose eigenvalue ``f_{x,z}(s)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import EPS_VALID, StabCoeffs, bits_to_str, parity_signs, str_to_bits
from .spectra import SCAN_CAP, npt_scan, twist_signs


@dataclass(frozen=True)
class WitnessIndex:
    n_qubits: int
    x: int
    z: int

    def __post_init__(self):
        if not 0 <= self.x < 1 << self.n_qubits:
            raise ValueError(f"x={self.x} out of range for N={self.n_qubits}")
        if not 0 <= self.z < 1 << (self.n_qubits - 1):
            raise ValueError(f"z={self.z} out of range for N={self.n_qubits}")

    def __str__(self) -> str:
        return f"x={bits_to_str(self.x, self.n_qubits)} z={bits_to_str(self.z, self.n_qubits - 1)}"

    @classmethod
    def parse(cls, text: str) -> WitnessIndex:
        fields = dict(part.split("=", 1) for part in text.split())
        x, z = fields["x"], fields["z"]
        if len(z) != len(x) - 1:
            raise ValueError(f"inconsistent widths in {text!r}")
        return cls(len(x), str_to_bits(x), str_to_bits(z))


class WitnessMethod(enum.Enum):
    SIGN_CONSTRUCTION = "sign-construction"
    GLOBAL_SCAN = "global-scan"


def witness_coefficients(w: WitnessIndex) -> np.ndarray:
    """Coefficient of each ``K_y`` in ``W_{x,z}`` (entries are +-1)."""
    y = np.arange(1 << w.n_qubits, dtype=np.int64)
    return parity_signs(y & w.x) * twist_signs(w.n_qubits, w.z)


def witness_expectation(state: StabCoeffs, w: WitnessIndex) -> float:
    """``Tr(W_{x,z} rho)``; a negative value certifies entanglement.

    Only the GHZ-diagonal part of ``rho`` enters, so ``state`` may be the
    coefficient vector extracted from any density matrix.
    """
    if state.n_qubits != w.n_qubits:
        raise ValueError("witness and state sizes differ")
    return float(np.dot(witness_coefficients(w), state.s))


def optimal_witness(
    state: StabCoeffs,
    eps_sign: float | None = None,
    eps: float = EPS_VALID,
    scan_cap: int = SCAN_CAP,
) -> tuple[WitnessIndex, float, WitnessMethod]:
    """Pick the witness with the smallest expectation value.

    When the odd-sector signs admit a consistent sign vector the witness is
    built directly and its value equals the separable budget. Otherwise the
    full bipartition scan supplies the global minimum.
    """
    from . import separability as sep

    sv = sep.find_sign_vector(state, sep.EPS_SIGN if eps_sign is None else eps_sign)
    if sv.exists:
        w = sep.constructed_witness(state, sv)
        return w, witness_expectation(state, w), WitnessMethod.SIGN_CONSTRUCTION
    report = npt_scan(state, eps=eps, scan_cap=scan_cap)
    x, z = report.global_argmin
    return WitnessIndex(state.n_qubits, x, z), report.global_min, WitnessMethod.GLOBAL_SCAN


@dataclass(frozen=True)
class ProjectorForm:
    """``W = scale * sum_k coeff_k |psi_{label_k}><psi_{label_k}|``.

    ``terms`` holds ``(label, coeff)`` pairs. With ``z = 0`` the labels of
    the two halves coincide and coefficients are merged, leaving two terms.
    """

    n_qubits: int
    terms: tuple[tuple[int, int], ...]
    scale: float

    def labelled(self) -> list[tuple[str, int]]:
        return [(bits_to_str(u, self.n_qubits), c) for u, c in self.terms]


def projector_form(w: WitnessIndex) -> ProjectorForm:
    x1 = w.x & 1
    xt = w.x >> 1
    acc: dict[int, int] = {}
    for a in (0, 1):
        u = a | (xt << 1)
        acc[u] = acc.get(u, 0) + 1
    for a in (0, 1):
        u = a | ((xt ^ w.z) << 1)
        acc[u] = acc.get(u, 0) + (-1) ** (x1 + a)
    return ProjectorForm(w.n_qubits, tuple(acc.items()), float(1 << (w.n_qubits - 1)))
