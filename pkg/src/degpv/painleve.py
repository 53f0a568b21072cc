"""The degenerate fifth Painleve equation and its three equivalent flows.

With q = -b0 and p = a0 on chart 1, the isomonodromic vector field becomes
the twisted Hamiltonian system

    q' = q(1 - q) dH/dp,   p' = -q(1 - q) dH/dq,
    H  = 2(p^2 - th0^2/4)/(t q) - 2(p^2 - th1^2/4)/(t (q - 1)) + 2 q t,

and eliminating p = (t/4) q' gives the scalar equation in ``degpv_rhs``.
Even solutions q(t) = Q(t^2) reduce to an equation for Q, and
y = Q/(Q - 1) turns that into the classical degenerate P_V.
"""

from __future__ import annotations

import cmath
import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, FixedSingularity
from .integrate import integrate_polyline
from .laxpair import vector_field
from .moduli import Chart1Point, Theta

GUARD = 1e-10
CSV_HEADER = ["t_re", "t_im", "q_re", "q_im", "p_re", "p_im", "H_re", "H_im", "residual"]
SYSTEMS = ("hamilton", "scalar", "moduli")


@dataclass(frozen=True)
class PState:
    q: complex
    p: complex
    t: complex
    theta: Theta

    def __post_init__(self):
        if self.t == 0:
            raise DegenerateInput("t must be nonzero")


@dataclass(frozen=True)
class EvenJet:
    value: complex
    d1: complex
    d2: complex
    at: complex


@dataclass
class Trajectory:
    """Samples (t, q, p) along a complex t-path.

    ``states`` keeps the raw integrator state (for the moduli flow this is
    (a0, b0, c1), which is what the constraint check needs).
    """

    t: np.ndarray
    q: np.ndarray
    p: np.ndarray
    theta: Theta
    t_path: tuple
    system: str = "hamilton"
    states: np.ndarray | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.t)

    def state(self, i) -> PState:
        return PState(complex(self.q[i]), complex(self.p[i]), complex(self.t[i]), self.theta)

    def hamiltonians(self) -> np.ndarray:
        return np.array([hamiltonian(self.state(i)) for i in range(len(self))])

    def residuals(self) -> np.ndarray:
        return np.array([abs(jet_residual(self.state(i))) for i in range(len(self))])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for i in range(len(self)):
            s = self.state(i)
            h = hamiltonian(s)
            w.writerow([_g(v) for v in (s.t.real, s.t.imag, s.q.real, s.q.imag, s.p.real, s.p.imag,
                                        h.real, h.imag, abs(jet_residual(s)))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, theta: Theta) -> "Trajectory":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise DegenerateInput("trajectory CSV has no rows")
        t = np.array([complex(float(r["t_re"]), float(r["t_im"])) for r in rows])
        q = np.array([complex(float(r["q_re"]), float(r["q_im"])) for r in rows])
        p = np.array([complex(float(r["p_re"]), float(r["p_im"])) for r in rows])
        return cls(t, q, p, theta, tuple(t))


def _g(x):
    return "%.17g" % x


def _guard_q(q, t, what="state"):
    if t == 0:
        raise FixedSingularity(f"t = 0 in {what}", (q, t))
    if abs(q) < GUARD or abs(q - 1) < GUARD:
        raise FixedSingularity(f"q = {q} is at a fixed singularity", (q, t))


def degpv_rhs(q, dq, t, th: Theta):
    """q'' for degP_V(theta0, theta1)."""
    _guard_q(q, t, "degpv_rhs")
    t2 = t * t
    return (0.5 * (1 / q + 1 / (q - 1)) * dq * dq - dq / t
            + 2 * (q - 1) * th.theta0 ** 2 / (q * t2)
            - 2 * q * th.theta1 ** 2 / ((q - 1) * t2)
            + 8 * q * (q - 1))


def hamiltonian(s: PState):
    q, p, t, th = s.q, s.p, s.t, s.theta
    _guard_q(q, t, "hamiltonian")
    p2 = p * p
    return 2 * (p2 - th.sq0) / (t * q) - 2 * (p2 - th.sq1) / (t * (q - 1)) + 2 * q * t


def hamiltonian_partials(s: PState):
    """(dH/dq, dH/dp) in closed form."""
    q, p, t, th = s.q, s.p, s.t, s.theta
    _guard_q(q, t, "hamiltonian")
    p2 = p * p
    hq = -2 * (p2 - th.sq0) / (t * q * q) + 2 * (p2 - th.sq1) / (t * (q - 1) ** 2) + 2 * t
    hp = 4 * p / (t * q) - 4 * p / (t * (q - 1))
    return hq, hp


def twisted_hamilton_rhs(s: PState):
    """(q', p') = (q(1-q) dH/dp, -q(1-q) dH/dq), expanded by hand.

    Multiplying out removes the cancellation between the two p^2 terms of
    dH/dq, which otherwise dominates the step-size control near a pole.
    """
    q, p, t, th = s.q, s.p, s.t, s.theta
    _guard_q(q, t, "twisted_hamilton_rhs")
    qm = q - 1
    dp = (2 * p * p * (2 * q - 1) / (t * q * qm) + 2 * th.sq0 * qm / (t * q)
          - 2 * th.sq1 * q / (t * qm) + 2 * t * q * qm)
    return 4 * p / t, dp


def jet_residual(s: PState):
    """q'' from the Hamiltonian system minus degpv_rhs, with q' = 4p/t.

    Zero up to rounding for any admissible state; it measures the
    consistency of the two formulations at that point.
    """
    dq, dp = twisted_hamilton_rhs(s)
    d2q = 4 * dp / s.t - 4 * s.p / (s.t * s.t)
    return d2q - degpv_rhs(s.q, dq, s.t, s.theta)


def chart_to_qp(p1: Chart1Point, th: Theta) -> PState:
    return PState(-p1.b0, p1.a0, p1.t, th)


def qp_to_chart(s: PState) -> Chart1Point:
    _guard_q(s.q, s.t, "qp_to_chart")
    th = s.theta
    a0, b0, t = s.p, -s.q, s.t
    c1 = (a0 * a0 + b0 * (th.sq1 - th.sq0) - b0 * t * t * (1 + b0) - th.sq0) / (b0 * (1 + b0))
    return Chart1Point(a0, b0, c1, t)


# -- flows ------------------------------------------------------------------

def _rhs_hamilton(th):
    def f(t, y):
        return np.array(twisted_hamilton_rhs(PState(y[0], y[1], t, th)))
    return f


def _rhs_scalar(th):
    def f(t, y):
        return np.array([y[1], degpv_rhs(y[0], y[1], t, th)])
    return f


def _rhs_moduli(th):
    def f(t, y):
        if t == 0:
            raise FixedSingularity("t = 0 in moduli flow")
        da0, db0, dc1 = vector_field(Chart1Point(y[0], y[1], y[2], t), th)
        return np.array([da0, db0, dc1])
    return f


def _check_path(path):
    pts = np.asarray(path, dtype=complex)
    if pts.ndim != 1 or len(pts) == 0:
        raise DegenerateInput("t path must be a nonempty list of points")
    for k in range(len(pts)):
        if pts[k] == 0:
            raise DegenerateInput("t path touches t = 0")
    for a, b in zip(pts[:-1], pts[1:]):
        d = b - a
        if d == 0:
            continue
        u = min(1.0, max(0.0, -(a * d.conjugate()).real / abs(d) ** 2))
        if abs(a + u * d) < 1e-12:
            raise DegenerateInput("t path passes through t = 0")
    return pts


def integrate_flow(s0: PState, t_path, tol=1e-10, samples_per_segment=1,
                   system="hamilton", atol=None) -> Trajectory:
    """Integrate one of the three equivalent flows along a polyline in t.

    ``system`` is "hamilton" (q, p), "scalar" (q, q') or "moduli"
    (a0, b0, c1 on chart 1). The path must start at ``s0.t``.
    """
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    pts = _check_path(t_path)
    if pts[0] != s0.t:
        raise DegenerateInput("t path must start at the initial time")
    th = s0.theta
    _guard_q(s0.q, s0.t)
    if system == "hamilton":
        f, y0 = _rhs_hamilton(th), [s0.q, s0.p]
    elif system == "scalar":
        f, y0 = _rhs_scalar(th), [s0.q, 4 * s0.p / s0.t]
    else:
        c = qp_to_chart(s0)
        f, y0 = _rhs_moduli(th), [c.a0, c.b0, c.c1]

    def guard(t, y):
        q = -y[1] if system == "moduli" else y[0]
        _guard_q(q, t)

    kw = dict(rtol=tol, atol=tol * 1e-2 if atol is None else atol, guard=guard)
    ts, ys = integrate_polyline(f, pts, y0, samples_per_segment, **kw)
    if system == "hamilton":
        q, p = ys[:, 0], ys[:, 1]
    elif system == "scalar":
        q, p = ys[:, 0], ts * ys[:, 1] / 4
    else:
        q, p = -ys[:, 1], ys[:, 0]
    return Trajectory(ts, q, p, th, tuple(complex(x) for x in pts), system, ys)


def linear_path(t0, t1, n):
    """n equal segments from t0 to t1, returned as a polyline."""
    return list(np.linspace(complex(t0), complex(t1), n + 1))


# -- even reduction ---------------------------------------------------------

def even_q_rhs(Q, dQ, s, th: Theta):
    _guard_q(Q, s, "even_q_rhs")
    s2 = s * s
    return (0.5 * (1 / Q + 1 / (Q - 1)) * dQ * dQ - dQ / s
            + (Q - 1) * (th.theta0 ** 2 / 2) / (Q * s2)
            - Q * (th.theta1 ** 2 / 2) / ((Q - 1) * s2)
            + 2 * Q * (Q - 1) / s)


def even_q_residual(Qj: EvenJet, th: Theta):
    return Qj.d2 - even_q_rhs(Qj.value, Qj.d1, Qj.at, th)


def classical_y_rhs(y, dy, s, th: Theta):
    _guard_q(y, s, "classical_y_rhs")
    s2 = s * s
    return (0.5 * (3 * y - 1) / (y * (y - 1)) * dy * dy - dy / s
            + y * (y - 1) ** 2 * th.theta1 ** 2 / (2 * s2)
            - (y - 1) ** 2 * th.theta0 ** 2 / (2 * s2 * y)
            - 2 * y / s)


def classical_y_residual(yj: EvenJet, th: Theta):
    return yj.d2 - classical_y_rhs(yj.value, yj.d1, yj.at, th)


def even_to_q_jet(Qj: EvenJet, t=None) -> EvenJet:
    """The jet of q(t) = Q(t^2); ``t`` defaults to the principal root of s."""
    if t is None:
        t = cmath.sqrt(Qj.at)
    elif abs(t * t - Qj.at) > 1e-12 * max(1.0, abs(Qj.at)):
        raise DegenerateInput("t^2 must equal the Q-jet point s")
    return EvenJet(Qj.value, 2 * t * Qj.d1, 2 * Qj.d1 + 4 * t * t * Qj.d2, t)


def q_jet_residual(qj: EvenJet, th: Theta):
    return qj.d2 - degpv_rhs(qj.value, qj.d1, qj.at, th)


def even_to_y_jet(Qj: EvenJet) -> EvenJet:
    """Jet of y = Q/(Q - 1)."""
    Q, dQ, d2Q = Qj.value, Qj.d1, Qj.d2
    if abs(Q - 1) < GUARD:
        raise FixedSingularity("Q = 1 has no image under y = Q/(Q - 1)", Q)
    m = Q - 1
    return EvenJet(Q / m, -dQ / (m * m), 2 * dQ * dQ / m ** 3 - d2Q / (m * m), Qj.at)
