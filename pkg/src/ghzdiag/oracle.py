"""Dense brute-force ground truth for the fast GHZ-diagonal routines.

Matrices use the computational basis with qubit 1 as the slowest-varying
tensor factor (the most significant bit of a row index). This is the
opposite of the bit order of coefficient indices, so every dense routine
goes through :func:`tensor_axis` to map qubits to axes.
"""

from __future__ import annotations

import numpy as np

from .core import PauliString, StabCoeffs, ky_pauli
from .spectra import pt_spectrum
from .witness import ProjectorForm, WitnessIndex, witness_coefficients

DENSE_CAP = 10

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def tensor_axis(qubit: int) -> int:
    """Axis of ``qubit`` (1-based) in the ``(2,)*N`` reshaped state."""
    return qubit - 1


def _check_cap(n_qubits: int, cap: int = DENSE_CAP) -> None:
    if n_qubits > cap:
        raise ValueError(f"dense construction refused for N={n_qubits} (cap {cap})")


def kron_all(factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = np.kron(out, f)
    return out


def pauli_dense(p: PauliString) -> np.ndarray:
    _check_cap(p.n_qubits)
    return p.sign * kron_all(PAULI[c] for c in p.sites)


def pauli_dense_index(y: int, n_qubits: int) -> np.ndarray:
    return pauli_dense(ky_pauli(y, n_qubits))


def operator_from_coefficients(c, n_qubits: int) -> np.ndarray:
    """``sum_y c[y] K_y`` as a dense matrix."""
    _check_cap(n_qubits)
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    for y, v in enumerate(c):
        if v != 0:
            out += v * pauli_dense_index(y, n_qubits)
    return out


def state_dense(state: StabCoeffs) -> np.ndarray:
    return operator_from_coefficients(state.s, state.n_qubits) / state.dim


def coefficients_dense(rho: np.ndarray, n_qubits: int) -> StabCoeffs:
    """Stabilizer expectations ``Tr(rho K_y)`` of an arbitrary density matrix."""
    _check_cap(n_qubits)
    s = [np.trace(rho @ pauli_dense_index(y, n_qubits)).real for y in range(1 << n_qubits)]
    s[0] = 1.0
    return StabCoeffs(n_qubits, s)


def ghz_basis_dense(x: int, n_qubits: int) -> np.ndarray:
    """``Z_x (|0>|+>...|+> + |1>|->...|->) / sqrt 2``."""
    _check_cap(n_qubits)
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    zero, one = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    psi = (kron_all([zero] + [plus] * (n_qubits - 1)) + kron_all([one] + [minus] * (n_qubits - 1)))
    psi = psi.ravel() / np.sqrt(2)
    zx = kron_all(PAULI["Z"] if (x >> (n - 1)) & 1 else PAULI["I"] for n in range(1, n_qubits + 1))
    return zx @ psi


def partial_transpose_dense(m: np.ndarray, z: int, n_qubits: int) -> np.ndarray:
    """Transpose the qubits ``n >= 2`` whose bit ``n - 2`` is set in ``z``."""
    dim = 1 << n_qubits
    if m.shape != (dim, dim):
        raise ValueError(f"matrix shape {m.shape} does not match N={n_qubits}")
    t = m.reshape((2,) * (2 * n_qubits))
    axes = list(range(2 * n_qubits))
    for n in range(2, n_qubits + 1):
        if (z >> (n - 2)) & 1:
            a = tensor_axis(n)
            axes[a], axes[a + n_qubits] = axes[a + n_qubits], axes[a]
    return t.transpose(axes).reshape(dim, dim)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Partition all index pairs of ``range(n)`` (``n`` even) into ``n - 1`` perfect matchings."""
    others = list(range(1, n))
    rounds = []
    for _ in range(n - 1):
        seq = [0] + others
        p = np.array([seq[i] for i in range(n // 2)])
        q = np.array([seq[n - 1 - i] for i in range(n // 2)])
        rounds.append((np.minimum(p, q), np.maximum(p, q)))
        others = others[-1:] + others[:-1]
    return rounds


def hermitian_eigenvalues(m, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps.

    Each sweep visits every off-diagonal pair once; pairs are grouped into
    disjoint matchings so one matching is rotated at a time with array ops.
    Stops once the off-diagonal Frobenius norm is below ``tol * ||m||_F``.
    """
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    norm = np.linalg.norm(a)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > 1e-10 * max(1.0, norm):
        raise ValueError("matrix is not Hermitian")
    n = a.shape[0]
    if n % 2:
        # decoupled zero row/column, dropped again at the end
        a = np.pad(a, ((0, 1), (0, 1)))
    a = 0.5 * (a + a.conj().T)
    size = a.shape[0]
    rounds = _round_robin(size)
    offdiag = ~np.eye(size, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a[offdiag]) ** 2))
        if off <= tol * norm:
            break
        for p, q in rounds:
            apq = a[p, q]
            r = np.abs(apq)
            active = r > 0
            if not active.any():
                continue
            r_safe = np.where(active, r, 1.0)
            phase = np.where(active, apq / r_safe, 1.0)
            theta = (a[q, q].real - a[p, p].real) / (2.0 * r_safe)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            em = phase.conj()
            col_p, col_q = a[:, p], a[:, q]
            a[:, p] = col_p * c - col_q * (s * em)
            a[:, q] = col_p * s + col_q * (c * em)
            row_p, row_q = a[p, :], a[q, :]
            a[p, :] = c[:, None] * row_p - (s * phase)[:, None] * row_q
            a[q, :] = s[:, None] * row_p + (c * phase)[:, None] * row_q
    else:
        raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(a.diagonal().real[:n])


def perturbed_state_dense(n_qubits: int, beta: float, gap: float, field: float) -> np.ndarray:
    """Thermal state of ``-1/2 sum_n (gap K_n + field Z_n)``.

    The local terms commute and square to ``(gap**2 + field**2) 1``, so the
    Gibbs state factorizes into ``prod_n (1 + s K'_n / r) / 2``.
    """
    _check_cap(n_qubits, 8)
    r = np.hypot(gap, field)
    s = np.tanh(0.5 * beta * r)
    dim = 1 << n_qubits
    rho = np.eye(dim, dtype=np.complex128)
    for n in range(1, n_qubits + 1):
        sites = ["I"] * n_qubits
        sites[n - 1] = "Z"
        kp = gap * pauli_dense_index(1 << (n - 1), n_qubits) + field * pauli_dense(PauliString(1, tuple(sites)))
        rho = rho @ (np.eye(dim) + s * kp / r) / 2
    return rho


def witness_dense(w: WitnessIndex) -> np.ndarray:
    return operator_from_coefficients(witness_coefficients(w), w.n_qubits)


def projector_sum_dense(pf: ProjectorForm) -> np.ndarray:
    dim = 1 << pf.n_qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    for u, c in pf.terms:
        psi = ghz_basis_dense(u, pf.n_qubits)
        out += c * np.outer(psi, psi.conj())
    return pf.scale * out


def dense_pt_eigenvalues(state: StabCoeffs, z: int) -> np.ndarray:
    return hermitian_eigenvalues(partial_transpose_dense(state_dense(state), z, state.n_qubits))


def cross_check(state: StabCoeffs, z: int) -> float:
    """Largest eigenvalue mismatch between the dense and fast partial-transpose paths."""
    _check_cap(state.n_qubits, 8)
    dense = dense_pt_eigenvalues(state, z)
    fast = np.sort(pt_spectrum(state, z).eigenvalues)
    return float(np.max(np.abs(dense - fast)))


def dense_min_pt_eigenvalue(state: StabCoeffs) -> float:
    """Smallest partial-transpose eigenvalue over all bipartitions, densely."""
    rho = state_dense(state)
    return min(
        hermitian_eigenvalues(partial_transpose_dense(rho, z, state.n_qubits))[0]
        for z in range(1 << (state.n_qubits - 1))
    )
