"""Compare the printed shift formula with the flow-compatible one.

Both send theta0 to theta0 + 1. Transforming the samples of a solution
must give samples of a solution of the shifted equation. Re-integrating
from the first image sample tells the two formulas apart.

    python demos/shift_discrepancy.py
"""

import numpy as np

from degpv.backlund import bt_shift, printed_shift_a, printed_shift_q, shift_q
from degpv.moduli import Theta
from degpv.painleve import PState, integrate_flow, linear_path

th = Theta(1, 1)
print("worked point q = 2, p = 1/2, t = 1:")
print(f"  printed formula  {printed_shift_q(2, 0.5, 1, th)}")
print(f"  corrected        {shift_q(2, 0.5, 1, th)}")

traj = integrate_flow(PState(0.5 + 0.1j, 0.1 - 0.05j, 1.0, th), linear_path(1, 1.5, 10))

img = bt_shift(traj)
ref = integrate_flow(img.state(0), list(img.t))
print(f"\ncorrected: max |q_image - q_flow| = {np.abs(ref.q - img.q).max():.2e}")

pq = np.array([printed_shift_q(traj.q[i], traj.p[i], traj.t[i], th) for i in range(len(traj))])
pa = printed_shift_a(traj.q[0], traj.p[0], traj.t[0], th)
ref = integrate_flow(PState(pq[0], pa, traj.t[0], Theta(2, 1)), list(traj.t))
print(f"printed:   max |q_image - q_flow| = {np.abs(ref.q - pq).max():.2e}")
