"""Walsh-Hadamard machinery for state and partial-transpose spectra.

Every GHZ-diagonal state and every partial transpose of one is diagonal in
the GHZ basis ``|psi_x>``, so all spectra reduce to signed sums
``sum_y (-1)^{x.y} v[y]``, i.e. one fast Walsh-Hadamard transform each.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import EPS_VALID, StabCoeffs, parity_signs

SCAN_CAP = 14
_CHUNK_ELEMENTS = 1 << 22


def fwht(v) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis.

    ``out[..., x] = sum_y (-1)^{popcount(x & y)} v[..., y]``, computed with
    ``log2(n)`` vectorized butterfly passes. The input is not modified.
    """
    a = np.array(v, dtype=np.float64)
    n = a.shape[-1] if a.ndim else 0
    if n == 0 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    lead = a.shape[:-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, n // (2 * h), 2, h)
        lo = a[..., 0, :] + a[..., 1, :]
        hi = a[..., 0, :] - a[..., 1, :]
        a[..., 0, :] = lo
        a[..., 1, :] = hi
        h *= 2
    return a.reshape(*lead, n)


def twist_signs(n_qubits: int, z) -> np.ndarray:
    """Signs ``(-1)^{y_1 (y~ . z)}`` picked up by ``K_y`` under the partial transpose.

    ``z`` may be an int or an array of ints; the result gains a leading axis
    in the latter case.
    """
    y = np.arange(1 << n_qubits, dtype=np.int64)
    zz = np.asarray(z, dtype=np.int64)
    return parity_signs(((y >> 1) & zz[..., None]) * (y & 1))


def pt_sign_twist(state: StabCoeffs, z: int) -> np.ndarray:
    _check_z(state.n_qubits, z)
    return state.s * twist_signs(state.n_qubits, z)


@dataclass(frozen=True)
class PTSpectrum:
    """Eigenvalues of ``rho`` partially transposed on the qubits flagged in ``z``.

    ``eigenvalues[x]`` belongs to the GHZ basis vector ``|psi_x>``.
    """

    n_qubits: int
    z: int
    eigenvalues: np.ndarray
    min_value: float
    argmin_x: int


def _spectrum(n_qubits: int, z: int, f: np.ndarray) -> PTSpectrum:
    eig = f / (1 << n_qubits)
    x = int(np.argmin(eig))
    return PTSpectrum(n_qubits, z, eig, float(eig[x]), x)


def state_spectrum(state: StabCoeffs) -> PTSpectrum:
    return _spectrum(state.n_qubits, 0, fwht(state.s))


def pt_spectrum(state: StabCoeffs, z: int) -> PTSpectrum:
    return _spectrum(state.n_qubits, z, fwht(pt_sign_twist(state, z)))


@dataclass(frozen=True)
class NptReport:
    """Minimum partial-transpose value ``f_{x,z}`` (unnormalized) for every bipartition.

    ``z_min[k]`` and ``x_argmin[k]`` refer to bipartition ``z = k``.
    """

    n_qubits: int
    z_min: np.ndarray
    x_argmin: np.ndarray
    global_min: float
    global_argmin: tuple[int, int]  # (x, z)
    threshold: float
    is_npt: bool

    @property
    def per_z(self) -> dict[int, tuple[float, int]]:
        return {z: (float(v), int(x)) for z, (v, x) in enumerate(zip(self.z_min, self.x_argmin))}


def _scan_chunk(state: StabCoeffs, zs: np.ndarray):
    f = fwht(state.s * twist_signs(state.n_qubits, zs))
    arg = np.argmin(f, axis=-1)
    return f[np.arange(len(zs)), arg], arg


def npt_scan(
    state: StabCoeffs,
    eps: float = EPS_VALID,
    scan_cap: int = SCAN_CAP,
    workers: int | None = None,
) -> NptReport:
    """Evaluate every bipartition and report the most negative PT eigenvalue.

    Negativity is declared when ``min f < -eps * 2**N``. The result does not
    depend on ``workers``.
    """
    n = state.n_qubits
    if n > scan_cap:
        raise ValueError(
            f"full bipartition scan refused for N={n} (cap {scan_cap}); raise scan_cap to override"
        )
    n_z = 1 << (n - 1)
    step = max(1, _CHUNK_ELEMENTS // state.dim)
    chunks = [np.arange(lo, min(lo + step, n_z)) for lo in range(0, n_z, step)]
    if workers and workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda zs: _scan_chunk(state, zs), chunks))
    else:
        parts = [_scan_chunk(state, zs) for zs in chunks]
    z_min = np.concatenate([p[0] for p in parts])
    x_arg = np.concatenate([p[1] for p in parts])
    z_best = int(np.argmin(z_min))
    threshold = -eps * state.dim
    gmin = float(z_min[z_best])
    return NptReport(
        n_qubits=n,
        z_min=z_min,
        x_argmin=x_arg,
        global_min=gmin,
        global_argmin=(int(x_arg[z_best]), z_best),
        threshold=threshold,
        is_npt=gmin < threshold,
    )


def _check_z(n_qubits: int, z: int) -> None:
    if not 0 <= z < 1 << (n_qubits - 1):
        raise ValueError(f"bipartition {z} out of range for N={n_qubits}")
