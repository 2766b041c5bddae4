"""
Where the sign test fails
=========================

A three-qubit family whose odd-sector signs admit no parity pattern. It is a
valid state for alpha >= 2 and PPT there. The generic decomposition proves
separability only from alpha = 4; rewriting the odd sector in a product basis
brings that down to 2 sqrt 2. Below that the status is left open.
"""

import math

import numpy as np

from ghzdiag.separability import casebook_alpha, rewrite_check

chk = rewrite_check()
print(f"rewrite residual {chk.residual:.1e}, product-term extremes {chk.term_extremes}")
print(f"odd-sector operator extremes {chk.operator_extremes}")

for alpha in (1.5, 2.0, 2.5, 2 * math.sqrt(2), 3.0, 4.0, 5.0):
    rep = casebook_alpha(alpha)
    verdict = rep.verdict.value if rep.verdict else "INVALID_STATE"
    print(
        f"alpha={alpha:.4f} valid={rep.valid!s:5} ppt={rep.ppt_all!s:5} "
        f"naive={rep.naive_budget:+.4f} improved={rep.improved_budget:+.4f} -> {verdict}"
    )

print("entanglement reported by a numerical SDP search up to alpha =", rep.reported_sdp_entangled_alpha)
print("alpha grid where the status stays open:", np.round(np.linspace(2, 2 * math.sqrt(2), 4), 3))
