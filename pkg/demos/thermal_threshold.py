"""
Critical temperature of a thermal GHZ state
===========================================

For the stabilizer Hamiltonian with couplings Delta_n the state stops being
entangled where tanh(beta Delta_1 / 2) = exp(-beta sum_{n>=2} Delta_n).
A weak uniform field only lowers the temperature below which the unperturbed
witness still fires.
"""

from ghzdiag.models import (
    ThermalParams,
    perturbed_critical_beta,
    thermal_critical_beta,
    thermal_s,
)
from ghzdiag.separability import separable_budget

print(" N   T_c      T_c(field 0.3)   budget at T_c")
for n in range(2, 13):
    beta_c = thermal_critical_beta([1.0] * n)
    beta_d = perturbed_critical_beta(n, 1.0, 0.3)
    budget = separable_budget(thermal_s(ThermalParams(beta_c, (1.0,) * n)))
    print(f"{n:2d}  {1 / beta_c:.5f}  {1 / beta_d:.5f}          {budget:+.1e}")

# Unequal couplings: qubit 1 is the one singled out by the threshold.
print("Delta=(1, 2): beta_c =", thermal_critical_beta([1.0, 2.0]))
