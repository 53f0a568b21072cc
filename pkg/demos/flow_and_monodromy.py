"""Integrate one solution three ways, then watch its monodromy stay put.

    python demos/flow_and_monodromy.py
"""

import numpy as np

from degpv.moduli import Theta
from degpv.monodromy import expected_s, monodromy_invariants
from degpv.painleve import PState, integrate_flow, linear_path, qp_to_chart

th = Theta(0.3, 0.7)
s = PState(0.5 + 0.1j, 0.05, 1.0, th)
path = linear_path(1, 2, 10)

runs = {k: integrate_flow(s, path, system=k) for k in ("hamilton", "scalar", "moduli")}
ham = runs["hamilton"]
for k in ("scalar", "moduli"):
    print(f"{k:8s} vs hamilton: max |dq| = {np.abs(runs[k].q - ham.q).max():.2e}")

print("\n t      tr M0                  tr M1                  tr M0M1")
for i in (0, 5, 10):
    inv = monodromy_invariants(qp_to_chart(ham.state(i)), th)
    print(f" {ham.t[i].real:.1f}   {inv.tr_m0:.10f}   {inv.tr_m1:.10f}   {inv.tr_m0m1:.10f}")
s0, s1 = expected_s(th)
print(f"\n2cos(pi theta0) = {s0.real:.10f}, 2cos(pi theta1) = {s1.real:.10f}")
