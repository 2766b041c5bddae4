"""Bit-level stabilizer products, coefficient vectors and structural predicates.

Conventions used throughout the package:

* An ``N``-bit string is stored as a plain ``int``. Bit ``n - 1`` of the
  integer holds the entry for qubit ``n``, so qubit 1 is the least
  significant bit.
* A bipartition ``z`` only covers qubits ``2..N`` (qubit 1 always stays on
  the untransposed side). Bit ``n - 2`` of ``z`` is qubit ``n``, so
  ``z`` lines up with ``y >> 1``.
* Human-readable bit strings are written qubit-1-first, e.g. ``"100"`` is
  the integer ``1`` for ``N = 3``.

The generators are ``K_1 = X Z ... Z`` and ``K_n = Z_1 X_n`` for ``n >= 2``.
A product ``K_y`` is formed left to right over increasing ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

MAX_QUBITS = 24
EPS_VALID = 1e-10

# (a, b) -> (phase, c) with a*b = phase * c
_PAULI_TABLE = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def bits_to_str(bits: int, width: int) -> str:
    """Render ``bits`` qubit-1-first, e.g. ``bits_to_str(1, 3) == "100"``."""
    if bits < 0 or bits >= 1 << width:
        raise ValueError(f"{bits} does not fit in {width} bits")
    return "".join("1" if (bits >> k) & 1 else "0" for k in range(width))


def str_to_bits(text: str) -> int:
    """Inverse of :func:`bits_to_str`."""
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return sum(1 << k for k, ch in enumerate(text) if ch == "1")


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def parity(bits: int) -> int:
    return popcount(bits) & 1


def parity_signs(bits) -> np.ndarray:
    """Elementwise ``(-1)**popcount(b)`` as float64."""
    par = np.bitwise_count(np.asarray(bits, dtype=np.int64)).astype(np.int64) & 1
    return (1 - 2 * par).astype(np.float64)


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Paulis with a real sign.

    ``sites[0]`` is qubit 1.
    """

    sign: int
    sites: tuple[str, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if set(self.sites) - set("IXYZ"):
            raise ValueError(f"bad Pauli labels {self.sites!r}")

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(1, ("I",) * n_qubits)

    @property
    def n_qubits(self) -> int:
        return len(self.sites)

    @property
    def weight(self) -> int:
        return sum(p != "I" for p in self.sites)

    def __mul__(self, other: PauliString) -> PauliString:
        if other.n_qubits != self.n_qubits:
            raise ValueError("Pauli strings act on different numbers of qubits")
        phase = complex(self.sign * other.sign)
        sites = []
        for a, b in zip(self.sites, other.sites):
            ph, c = _PAULI_TABLE[a, b]
            phase *= ph
            sites.append(c)
        if phase.imag != 0:
            raise ArithmeticError("product of these Pauli strings is anti-Hermitian")
        return PauliString(int(phase.real), tuple(sites))

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + "".join(self.sites)


def generator_pauli(n: int, n_qubits: int) -> PauliString:
    """The stabilizer generator ``K_n`` (``n`` is 1-based)."""
    if not 1 <= n <= n_qubits:
        raise ValueError(f"generator index {n} out of range for N={n_qubits}")
    if n == 1:
        return PauliString(1, ("X",) + ("Z",) * (n_qubits - 1))
    sites = ["I"] * n_qubits
    sites[0] = "Z"
    sites[n - 1] = "X"
    return PauliString(1, tuple(sites))


def ky_pauli(y: int, n_qubits: int) -> PauliString:
    """The stabilizer product ``K_y`` as an explicit signed Pauli string.

    >>> str(ky_pauli(0b111, 3))
    '-XYY'
    """
    if n_qubits < 2:
        raise ValueError("need at least two qubits")
    if y < 0 or y >= 1 << n_qubits:
        raise ValueError(f"index {y} out of range for N={n_qubits}")
    out = PauliString.identity(n_qubits)
    for n in range(1, n_qubits + 1):
        if (y >> (n - 1)) & 1:
            out = out * generator_pauli(n, n_qubits)
    return out


def support(y: int, n_qubits: int) -> int:
    """Number of non-identity sites of ``K_y``.

    Every product containing ``K_1`` is non-identity on all ``N`` sites;
    otherwise the ``X`` sites are the set bits of ``y`` and qubit 1 carries
    ``Z`` to the power of their count.
    """
    if y & 1:
        return n_qubits
    w = popcount(y)
    return w + (w & 1)


def compatible(y: int, y2: int, n_qubits: int) -> bool:
    """True if ``K_y`` and ``K_y2`` agree wherever both are non-identity."""
    a = ky_pauli(y, n_qubits).sites
    b = ky_pauli(y2, n_qubits).sites
    return all(p == q or p == "I" or q == "I" for p, q in zip(a, b))


@dataclass(frozen=True, eq=False)
class StabCoeffs:
    """Stabilizer expectation values ``s[y] = Tr(rho K_y)`` of a GHZ-diagonal state.

    The vector fully determines the state,
    ``rho = 2**-N * sum_y s[y] K_y``.
    """

    n_qubits: int
    s: np.ndarray

    def __post_init__(self):
        if not 2 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"N must be in [2, {MAX_QUBITS}], got {self.n_qubits}")
        s = np.array(self.s, dtype=np.float64)
        if s.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} coefficients for N={self.n_qubits}, got shape {s.shape}"
            )
        s.flags.writeable = False
        object.__setattr__(self, "s", s)

    @classmethod
    def from_vector(cls, s) -> StabCoeffs:
        s = np.asarray(s, dtype=np.float64)
        n = int(s.size).bit_length() - 1
        if s.ndim != 1 or 1 << n != s.size:
            raise ValueError("coefficient vector length must be a power of two")
        return cls(n, s)

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> StabCoeffs:
        s = np.zeros(1 << n_qubits)
        s[0] = 1.0
        return cls(n_qubits, s)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @property
    def even(self) -> np.ndarray:
        """Coefficients ``s[0 y~]`` (``K_1`` absent), indexed by ``y~``."""
        return self.s[0::2]

    @property
    def odd(self) -> np.ndarray:
        """Coefficients ``s[1 y~]`` (``K_1`` present), indexed by ``y~``."""
        return self.s[1::2]

    def __eq__(self, other):
        if not isinstance(other, StabCoeffs):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(self.s, other.s)

    def __repr__(self):
        return f"StabCoeffs(n_qubits={self.n_qubits}, s={self.s.tolist()!r})"


class Validity(NamedTuple):
    valid: bool
    min_eigenvalue: float
    failing_index: int | None
    """``0`` when ``s[0] != 1``, else the eigenvector index ``x`` with a negative eigenvalue."""


def validate_state(state: StabCoeffs, eps: float = EPS_VALID) -> Validity:
    from .spectra import fwht

    eig = fwht(state.s) / state.dim
    x_min = int(np.argmin(eig))
    lam = float(eig[x_min])
    if abs(state.s[0] - 1.0) > eps:
        return Validity(False, lam, 0)
    if lam < -eps:
        return Validity(False, lam, x_min)
    return Validity(True, lam, None)


def random_state(n_qubits: int, rng: np.random.Generator, concentration: float = 1.0) -> StabCoeffs:
    """Draw a GHZ-diagonal state with Dirichlet-distributed eigenvalues."""
    from .spectra import fwht

    lam = rng.dirichlet(np.full(1 << n_qubits, concentration))
    s = fwht(lam)
    s[0] = 1.0
    return StabCoeffs(n_qubits, s)


class SVectorFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_svector(text: str, eps: float = EPS_VALID) -> StabCoeffs:
    """Parse the ``N`` / ``index value`` text format; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise SVectorFormatError("empty file", 1)
    lineno, head = rows[0]
    try:
        n = int(head)
    except ValueError:
        raise SVectorFormatError(f"expected qubit count, got {head!r}", lineno) from None
    if not 2 <= n <= MAX_QUBITS:
        raise SVectorFormatError(f"qubit count {n} outside [2, {MAX_QUBITS}]", lineno)
    dim = 1 << n
    body = rows[1:]
    if len(body) != dim:
        where = body[dim][0] if len(body) > dim else (body[-1][0] + 1 if body else lineno + 1)
        raise SVectorFormatError(f"expected {dim} coefficient lines, found {len(body)}", where)
    s = np.empty(dim)
    for expected, (lineno, line) in enumerate(body):
        parts = line.split()
        if len(parts) != 2:
            raise SVectorFormatError(f"expected 'index value', got {line!r}", lineno)
        try:
            idx, val = int(parts[0]), float(parts[1])
        except ValueError:
            raise SVectorFormatError(f"cannot parse {line!r}", lineno) from None
        if idx != expected:
            raise SVectorFormatError(f"index {idx} out of order, expected {expected}", lineno)
        s[idx] = val
    if abs(s[0] - 1.0) > eps:
        raise SVectorFormatError(f"s[0] must be 1, got {s[0]!r}", body[0][0])
    return StabCoeffs(n, s)


def format_svector(state: StabCoeffs) -> str:
    lines = [str(state.n_qubits)]
    lines += [f"{y} {float(v)!r}" for y, v in enumerate(state.s)]
    return "\n".join(lines) + "\n"


def read_svector(path, eps: float = EPS_VALID) -> StabCoeffs:
    return parse_svector(Path(path).read_text(), eps)


def write_svector(state: StabCoeffs, path) -> None:
    Path(path).write_text(format_svector(state))
