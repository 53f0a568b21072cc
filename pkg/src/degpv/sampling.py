"""Seeded random inputs shared by the verification suites and the tests."""

from __future__ import annotations

import numpy as np

from .errors import FixedSingularity, StepFailure
from .moduli import Chart1Point, Theta
from .painleve import PState, degpv_rhs, even_q_rhs, integrate_flow, linear_path


def random_theta(rng, bound=3.0) -> Theta:
    """Complex theta with |theta| <= bound."""
    return Theta(complex(*rng.uniform(-bound, bound, 2)) / np.sqrt(2),
                 complex(*rng.uniform(-bound, bound, 2)) / np.sqrt(2))


def random_t(rng, lo=0.5, hi=2.0):
    return rng.uniform(lo, hi) * np.exp(1j * rng.uniform(0, 2 * np.pi))


def random_chart1(rng, th: Theta, t=None) -> Chart1Point:
    """On-variety chart-1 point: the defining equation is linear in c1."""
    a0 = complex(*rng.normal(size=2))
    b0 = complex(*rng.normal(size=2))
    if t is None:
        t = random_t(rng)
    num = a0 ** 2 + b0 * (th.sq1 - th.sq0) - b0 * t * t * (1 + b0) - th.sq0
    return Chart1Point(a0, b0, num / (b0 * (1 + b0)), t)


def random_q_jet(rng, th: Theta):
    """(q, q', q'', t) with q'' taken from degP_V."""
    q = complex(*rng.normal(size=2)) + 0.5
    dq = complex(*rng.normal(size=2))
    t = random_t(rng)
    return q, dq, degpv_rhs(q, dq, t, th), t


def random_Q_jet(rng, th: Theta):
    """(Q, Q', Q'', s) with Q'' taken from the even-reduction equation."""
    Q = complex(*rng.normal(size=2)) + 0.5
    dQ = complex(*rng.normal(size=2))
    s = random_t(rng)
    return Q, dQ, even_q_rhs(Q, dQ, s, th), s


def bounded_solutions(rng, n, t_end=2.0, th=None, bound=5.0, segments=10, tol=1e-10,
                      max_tries=1000):
    """Initial states at t = 1 whose solution stays finite and below ``bound`` on [1, t_end].

    Initial q is drawn near the segment (0, 1), where solutions of the
    equation are tame; draws that still hit a pole are skipped.
    """
    out = []
    for _ in range(max_tries):
        theta = th if th is not None else Theta(*rng.uniform(0.1, 0.9, 2))
        q = complex(rng.uniform(0.3, 0.7), rng.uniform(-0.2, 0.2))
        p = complex(*rng.uniform(-0.2, 0.2, 2))
        s = PState(q, p, 1.0, theta)
        try:
            tr = integrate_flow(s, linear_path(1.0, t_end, segments), tol)
        except (StepFailure, FixedSingularity):
            continue
        if max(np.abs(tr.q).max(), np.abs(tr.p).max()) <= bound:
            out.append(s)
            if len(out) == n:
                return out
    raise RuntimeError(f"found only {len(out)} bounded solutions in {max_tries} draws")
