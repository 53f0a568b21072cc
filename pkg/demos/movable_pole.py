"""A real solution with a movable pole between t = 1 and t = 2.

The straight path stops at the pole; a detour through the upper or lower
half plane gets past it, and both detours agree because a pole has no
branching.

    python demos/movable_pole.py
"""

from degpv.errors import StepFailure
from degpv.moduli import Theta
from degpv.painleve import PState, integrate_flow

s = PState(2, 0.5, 1, Theta(1, 1))
try:
    integrate_flow(s, [1, 2])
except StepFailure as exc:
    print(f"straight path stops near t = {exc.last_t.real:.8f}")

up = integrate_flow(s, [1, 1.5 + 0.5j, 2])
down = integrate_flow(s, [1, 1.5 - 0.5j, 2])
print(f"q(2) via upper detour: {up.q[-1]:.12f}")
print(f"q(2) via lower detour: {down.q[-1]:.12f}")
