"""First-order boundaries: where det Z changes sign.

Level crossings exchange ground states of opposite fermion-number parity;
they sit exactly where det Z = 0.  Small free-ends graphs have closed-form
boundary curves that the sign-bisection search reproduces to ~1e-10, and
the brute-force Fock-space reference confirms the parity bookkeeping.
"""

import numpy as np

from fermifid import (Boundary, ModelParams, SweepSpec, build,
                      first_order_boundary)
from fermifid.oracle import fock_hamiltonian_gs
from fermifid.solver import canonical_decompose, polar_T

# --- two modes: the boundary is the unit circle ---------------------------
print("L = 2 free ends: crossings of det Z = mu^2 + gamma^2 - 1")
for gamma in (0.2, 0.5, 0.9):
    pts = first_order_boundary(2, Boundary.FREE_ENDS,
                               SweepSpec("mu", 0.0, 1.5, 60, gamma))
    mu = pts[0].mu
    print(f"  gamma = {gamma}: mu* = {mu:.10f} "
          f"(circle gives {np.sqrt(1 - gamma**2):.10f}), parity "
          f"{pts[0].parity_below:+d} -> {pts[0].parity_above:+d}")

# --- three modes: an open curve with a vertical asymptote ------------------
print("\nL = 3 free ends: gamma^2 = -(mu-1)^2 (mu+2)/(3 mu - 2)")
for gamma in (0.8, 1.5):
    pts = first_order_boundary(3, Boundary.FREE_ENDS,
                               SweepSpec("mu", -2.5, 0.66, 200, gamma))
    for p in pts:
        implied = -(p.mu - 1) ** 2 * (p.mu + 2) / (3 * p.mu - 2)
        print(f"  gamma = {gamma}: mu* = {p.mu:+.8f}, curve residual "
              f"{abs(implied - gamma**2):.1e}")

# --- parity against the exact ground state --------------------------------
print("\nparity check against the 2^L reference (L = 6, cyclic r = 1):")
for mu in (0.5, 1.5):
    p = ModelParams(L=6, r=1, mu=mu, gamma=0.9, boundary=Boundary.CYCLIC)
    m = build(p)
    polar = polar_T(canonical_decompose(m), m)
    res = fock_hamiltonian_gs(m)
    print(f"  mu = {mu}: sign(det Z) = {polar.parity:+d}, "
          f"exact ground-state parity = {res.parity:+d}")
