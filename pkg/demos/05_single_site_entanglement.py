"""Single-site entanglement across the phase diagram.

The one-site entropy of the fully-connected cyclic graph follows from the
uniform diagonal of the polar factor: maximal (one bit) on the mu = 1 line,
exactly zero on the factorized gamma = 0, mu > 1 axis, with divergent
derivatives marking both transitions.
"""

import numpy as np

from fermifid.ent import entropy_derivative_diag, si_tdl, single_site, tii_tdl
from fermifid.model import Boundary, ModelParams
from fermifid.solver import zeta_fully_connected


def fc(L, mu, gamma):
    return ModelParams(L=L, r=L // 2, mu=mu, gamma=gamma,
                       boundary=Boundary.CYCLIC)


print("entropy profile along mu at gamma = 1.2 (L = 4001 vs limit):")
for mu in (0.0, 0.5, 0.9, 1.0, 1.1, 1.5, 2.5):
    rec = single_site(zeta_fully_connected(fc(4001, mu, 1.2)))
    print(f"  mu = {mu:4.1f}: n = {rec.n:.4f}  Si = {rec.si:.6f}  "
          f"(limit {si_tdl(mu, 1.2):.6f})")

print("\nfactorization on the mu axis: Si(gamma = 0, mu = 2) =",
      single_site(zeta_fully_connected(fc(1001, 2.0, 0.0))).si)

print("\nfinite-size convergence of the density at (2, 3):")
for L in (501, 1001, 2001, 4001):
    rec = single_site(zeta_fully_connected(fc(L, 2.0, 3.0)))
    print(f"  L = {L:5d}: |T_ii - limit| = "
          f"{abs(rec.tii - tii_tdl(2.0, 3.0)):.2e}")

print("\ndivergent derivatives near the transitions:")
for eps in (1e-2, 1e-3, 1e-4):
    d = entropy_derivative_diag(1 + eps, 1.5, step=eps / 20)
    print(f"  mu - 1 = {eps:6.0e}: d2 Si/d mu^2 = {d['d2Si_dmu2']:9.2f}"
          f"   (/ log^2|mu-1| = {d['d2Si_dmu2'] / np.log(eps)**2:.3f})")
for g in (1e-2, 1e-3):
    d = entropy_derivative_diag(2.0, g, step=g / 20)
    print(f"  gamma = {g:6.0e}: d Si/d gamma = {d['dSi_dgamma']:7.3f}"
          "   (grows like -log gamma)")
