"""
Depolarized GHZ states
======================

Independent depolarization keeps the state GHZ-diagonal with
s_y = (1 - p)**support(K_y). All odd-sector coefficients are equal, so the
PPT and separability thresholds coincide. The threshold grows with N inside
each parity class, but an odd N can sit slightly below the even N before it.
"""

import numpy as np

from ghzdiag.models import (
    DepolarizingParams,
    depolarized_s,
    depolarizing_critical_p,
    dephasing_critical_p,
)
from ghzdiag.separability import certify
from ghzdiag.spectra import npt_scan

print(" N  p_c(dephasing)  p_c(depolarizing)")
for n in range(2, 13):
    print(f"{n:2d}  {dephasing_critical_p(n):.6f}        {depolarizing_critical_p(n):.6f}")

# Between p_c(7) and p_c(6) a six-qubit state is still NPT while the
# seven-qubit one is already PPT.
p = 0.5 * (depolarizing_critical_p(6) + depolarizing_critical_p(7))
for n in (6, 7):
    s = depolarized_s(DepolarizingParams(p, n))
    print(f"p={p:.5f} N={n}: npt={npt_scan(s).is_npt} verdict={certify(s).verdict.value}")

s = depolarized_s(DepolarizingParams(0.5, 3))
print("N=3, p=0.5 coefficients:", np.round(s.s, 4))
