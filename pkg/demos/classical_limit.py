"""
Recovering the classical operator as q -> 1
===========================================

With q = e^eps and x = e^(eps z), the q-difference operator acting on a
plane wave approaches k^2 - j(j+1)/sinh(z)^2 plus the constant, i.e. the
classical Poeschl-Teller / Lame-type Schroedinger action.  The script
tabulates the approach for shrinking eps and extrapolates.
"""

import math

from dynrmat import classical_limit_table

for j in (1, 2):
    for k in (2, 3):
        for z in (0.5, 1.0):
            rows, extrap, target, order = classical_limit_table(
                j, k, z, eps_values=(1e-2, 1e-3)
            )
            print("j=%d k=%d z=%.1f" % (j, k, z))
            print("  classical target  k^2 - j(j+1)/sinh(z)^2 = %.10f" % target)
            for eps, val in rows:
                print("  eps=%-7g action=%.10f  err=%.2e"
                      % (eps, val, abs(val - target)))
            rel = abs(extrap - target) / abs(target)
            print("  extrapolated %.10f  rel err %.2e  observed order %.2f"
                  % (extrap, rel, order))

# The quadratic order comes from symmetrizing over q = e^(+eps) and
# q = e^(-eps), which cancels every odd power of eps in the action.
print("\nsanity: sinh identity at z=0.5:", math.sinh(0.5) ** 2)
