"""Singlet correlations by explicit 4x4 trace algebra.

E(t1, t2) = Tr(rho (sigma(t1) x I)(I x sigma(t2))) with rho the singlet
projector. The closed form -cos(t1 - t2) is printed alongside as a check.
"""
import math

import numpy as np

from bellnogo import quantum

rho = quantum.singlet_density()
print("singlet density operator (real part):")
print(np.real(rho.matrix))

print("\n delta      trace        -cos(delta)")
for delta in np.linspace(0, math.pi, 7):
    e = quantum.singlet_correlation(0.0, delta)
    print(f"{delta:6.3f}  {e: .12f}  {-math.cos(delta): .12f}")

print("\nOutcome law at delta = pi/3 (++, +-, -+, --):", quantum.singlet_joint_law(0.0, math.pi / 3))

r = quantum.quantum_bell_expression(0.0, 2 * math.pi / 3, math.pi / 3)
print("\n|E(0,2pi/3) - E(pi/3,2pi/3)| =", round(r.lhs, 12), " vs 1 + E(0,pi/3) =", round(r.rhs, 12))
print("inequality holds:", r.holds)
