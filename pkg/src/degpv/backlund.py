"""Backlund transformations of degP_V and their verification.

Five generators act on (solution, theta0, theta1):

    NegateT     q(t) -> q(-t)                    theta unchanged
    FlipTheta0  identity on solutions            theta0 -> -theta0
    FlipTheta1  identity on solutions            theta1 -> -theta1
    Swap        q(t) -> 1 - q(i t)               (theta0, theta1) -> (theta1, theta0)
    Shift       q -> q~(q, p, t)                 theta0 -> theta0 + 1

With p = (t/4) q', NegateT keeps p and Swap sends p to -p.

The shift comes from a gauge transformation of the connection that raises
the local exponent at z = 0 by one. Its closed form is ``bt_shift_point``.
The variant in ``printed_shift_q`` / ``printed_shift_a`` is off by one term in each
formula and does not map solutions to solutions; it is kept so the two can
be compared.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DegenerateInput, FixedSingularity
from .moduli import Theta
from .painleve import (
    PState, Trajectory, degpv_rhs, integrate_flow, twisted_hamilton_rhs,
)

SHIFT_GUARD = 1e-8


class BTKind(enum.Enum):
    NegateT = "negate-t"
    FlipTheta0 = "flip0"
    FlipTheta1 = "flip1"
    Swap = "swap"
    Shift = "shift"

    def theta(self, th: Theta) -> Theta:
        """Target parameters."""
        if self is BTKind.FlipTheta0:
            return Theta(-th.theta0, th.theta1)
        if self is BTKind.FlipTheta1:
            return Theta(th.theta0, -th.theta1)
        if self is BTKind.Swap:
            return Theta(th.theta1, th.theta0)
        if self is BTKind.Shift:
            return Theta(th.theta0 + 1, th.theta1)
        return th


def compose_theta(kinds, th: Theta) -> Theta:
    """Apply the parameter maps of ``kinds`` left to right."""
    for k in kinds:
        th = k.theta(th)
    return th


# -- trajectory-level maps --------------------------------------------------

def _rebuild(traj: Trajectory, t, q, p, th, path) -> Trajectory:
    return Trajectory(np.asarray(t), np.asarray(q), np.asarray(p), th, tuple(path), traj.system)


def bt_negate_t(traj: Trajectory) -> Trajectory:
    return _rebuild(traj, -traj.t, traj.q.copy(), traj.p.copy(), traj.theta,
                    [-x for x in traj.t_path])


def bt_theta_flip(traj: Trajectory, which: int) -> Trajectory:
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    kind = BTKind.FlipTheta0 if which == 0 else BTKind.FlipTheta1
    return _rebuild(traj, traj.t.copy(), traj.q.copy(), traj.p.copy(), kind.theta(traj.theta),
                    traj.t_path)


def bt_swap(traj: Trajectory) -> Trajectory:
    """q~(t~) = 1 - q(i t~): sample at t becomes a sample at t~ = -i t."""
    return _rebuild(traj, -1j * traj.t, 1 - traj.q, -traj.p, BTKind.Swap.theta(traj.theta),
                    [-1j * x for x in traj.t_path])


def bt_swap_jet(q, dq, d2q, t):
    """Jet of q~ at t~ = -i t, given the jet of q at t."""
    if t == 0:
        raise DegenerateInput("t must be nonzero")
    return 1 - q, -1j * dq, d2q, -1j * t


# -- the shift --------------------------------------------------------------

def _shift_guard(s: PState):
    if s.t == 0:
        raise DegenerateInput("t must be nonzero")
    if abs(s.q) < SHIFT_GUARD or abs(s.q - 1) < SHIFT_GUARD:
        raise FixedSingularity(f"shift undefined at q = {s.q}", s)


def printed_shift_q(q, a, t, th: Theta):
    """q~ as printed in the source; lacks the -a^2/(q^2 t^2 (q-1)) term."""
    th0, th1 = th.theta0, th.theta1
    qt2 = q * q * t * t
    return 1 - th0 ** 2 * (q - 1) / (4 * qt2) + a * th0 / qt2 + th1 ** 2 / (4 * t * t * (q - 1))


def printed_shift_a(q, a, t, th: Theta):
    """a~ as printed in the source; its last term is twice the correct one."""
    return _shift_a(q, a, t, th, last=1.0)


def _shift_a(q, a, t, th, last):
    th0, th1 = th.theta0, th.theta1
    t2, q3 = t * t, q ** 3
    return ((q - 1) * th0 ** 3 / (8 * q3 * t2)
            + (q * q + 2 * a * q - q - 6 * a) * th0 ** 2 / (8 * q3 * t2)
            + (q - 1) * th0 / (2 * q)
            - a * (q * q + 2 * a * q - q - 3 * a) * th0 / (2 * (q - 1) * q3 * t2)
            - th0 * th1 ** 2 / (8 * q * t2 * (q - 1))
            - a / q
            - (q + 2 * a) * th1 ** 2 / (8 * q * (q - 1) * t2)
            + last * a * a * (2 * a + q) / (q3 * t2 * (q - 1)))


def shift_q(q, a, t, th: Theta):
    return printed_shift_q(q, a, t, th) - a * a / (q * q * t * t * (q - 1))


def shift_a(q, a, t, th: Theta):
    return _shift_a(q, a, t, th, last=0.5)


def bt_shift_point(s: PState) -> PState:
    """Image of (q, p, t) under the shift theta0 -> theta0 + 1."""
    _shift_guard(s)
    th = s.theta
    return PState(shift_q(s.q, s.p, s.t, th), shift_a(s.q, s.p, s.t, th), s.t,
                  BTKind.Shift.theta(th))


def bt_shift(traj: Trajectory) -> Trajectory:
    img = [bt_shift_point(traj.state(i)) for i in range(len(traj))]
    return _rebuild(traj, traj.t.copy(), [s.q for s in img], [s.p for s in img],
                    BTKind.Shift.theta(traj.theta), traj.t_path)


APPLY = {
    BTKind.NegateT: bt_negate_t,
    BTKind.FlipTheta0: lambda tr: bt_theta_flip(tr, 0),
    BTKind.FlipTheta1: lambda tr: bt_theta_flip(tr, 1),
    BTKind.Swap: bt_swap,
    BTKind.Shift: bt_shift,
}


def apply_bt(traj: Trajectory, kind: BTKind) -> Trajectory:
    return APPLY[kind](traj)


# -- verification -----------------------------------------------------------

def _source_jets(traj: Trajectory):
    """(q, q', q'') at every sample, q' from p and q'' from the source equation."""
    out = []
    for i in range(len(traj)):
        s = traj.state(i)
        dq, _ = twisted_hamilton_rhs(s)
        out.append((s.q, dq, degpv_rhs(s.q, dq, s.t, s.theta), s.t))
    return out


def _jet_image(kind, jet):
    q, dq, d2q, t = jet
    if kind is BTKind.NegateT:
        return q, -dq, d2q, -t
    if kind is BTKind.Swap:
        return bt_swap_jet(q, dq, d2q, t)
    return jet


def verify_bt(traj: Trajectory, kind: BTKind, tol=1e-10) -> float:
    """Largest residual of the transformed trajectory against the target equation.

    Jet-level maps push the source jets forward and evaluate the target
    equation; the image samples must also match the pushed jets through
    p = (t/4) q'. The shift is checked by re-integrating the target
    equation from the first image sample and comparing along the path.
    """
    if len(traj) < 5:
        raise DegenerateInput("verification needs at least 5 samples")
    img = apply_bt(traj, kind)
    th = img.theta
    if kind is BTKind.Shift:
        ref = integrate_flow(img.state(0), list(img.t), tol=tol)
        return float(max(np.abs(ref.q - img.q).max(), np.abs(ref.p - img.p).max()))
    worst = 0.0
    for i, jet in enumerate(_source_jets(traj)):
        q, dq, d2q, t = _jet_image(kind, jet)
        worst = max(worst, abs(d2q - degpv_rhs(q, dq, t, th)),
                    abs(img.q[i] - q), abs(img.t[i] - t), abs(img.p[i] - t * dq / 4))
    return float(worst)
