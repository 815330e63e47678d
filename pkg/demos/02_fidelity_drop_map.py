"""Fidelity-drop map of the fully-connected cyclic graph.

Reproduces the full-plane picture at desk scale: the minimum of the
fidelity against displacements of 0.1 along each parameter axis, on a
coarse (mu, gamma) grid at L = 1001.  The two critical lines mu = 1 and
gamma = 0 show up as valleys.  Writes fidelity_map.csv (and a gnuplot
version) next to this script; raise the resolution for a figure-quality
map, every point costs only O(L).
"""

import pathlib

import numpy as np

from fermifid.scan import GridAxis, ScanSpec, emit, run_scan

here = pathlib.Path(__file__).parent
spec = ScanSpec(L=(1001,),
                mu=GridAxis(-1.0, 3.0, 41),
                gamma=GridAxis(-2.0, 2.0, 41),
                quantities=("F_min", "log10_abs_h"),
                dmu=0.1, dgamma=0.1, fd_step=1e-4, threads=2)
table = run_scan(spec)
emit(table, "csv", str(here / "fidelity_map.csv"))
emit(table, "gnuplot", str(here / "fidelity_map.dat"))

rows = table.rows
f = np.array([r.values["F_min"] for r in rows]).reshape(41, 41)
mu = np.array(sorted({r.mu for r in rows}))
gamma = np.array(sorted({r.gamma for r in rows}))
flagged = sum(r.status != "ok" for r in rows)
print("wrote", here / "fidelity_map.csv")
print(f"{flagged} grid point(s) carry status flags (the singular point "
      "(1, 0) has no defined fidelity)")

print("\nslice along mu at gamma = 1.5 (valley at the mu = 1 line):")
gi = int(np.argmin(np.abs(gamma - 1.5)))
for k in range(0, 41, 4):
    v = f[gi, k]
    print(f"  mu = {mu[k]:+.2f}  F_min = {v:.3f} " + "#" * int(40 * v))

print("\nslice along gamma at mu = 2.5 (valley at the gamma = 0 line):")
mi = int(np.argmin(np.abs(mu - 2.5)))
for k in range(0, 41, 4):
    v = f[k, mi]
    print(f"  gamma = {gamma[k]:+.2f}  F_min = {v:.3f} " + "#" * int(40 * v))
