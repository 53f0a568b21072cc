"""Identity suites behind ``degpv verify``.

Each suite draws seeded random inputs, evaluates an identity that holds
exactly in exact arithmetic, and reports the largest residual. None of
them depends on an integration tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import monodromy as mono
from .algebra import PolyZ
from .backlund import bt_swap_jet
from .laxpair import constraint_drift, residual_polynomials, zero_curvature_residual
from .moduli import (
    Theta, certify_equivalence, chart1_matrix, chart2_matrix, gauge_1to2, invariant_line_defect,
    invariant_line_series, transition_1to2, transition_2to1,
)
from .painleve import (
    EvenJet, classical_y_residual, degpv_rhs, even_to_q_jet, even_to_y_jet, q_jet_residual,
)
from .sampling import random_chart1, random_Q_jet, random_q_jet, random_theta

THRESHOLD = 1e-10


@dataclass
class SuiteResult:
    suite: str
    n_cases: int
    max_residual: float

    @property
    def passed(self) -> bool:
        return self.max_residual < THRESHOLD

    def as_dict(self):
        return {"suite": self.suite, "n_cases": self.n_cases,
                "max_residual": self.max_residual, "pass": self.passed}


def zero_curvature(rng, n=100):
    worst = 0.0
    for _ in range(n):
        th = random_theta(rng)
        polys = residual_polynomials(zero_curvature_residual(random_chart1(rng, th), th))
        worst = max(worst, max(p.max_abs() for p in polys))
    return SuiteResult("zero_curvature", n, worst)


def constraint(rng, n=100):
    worst = 0.0
    for _ in range(n):
        th = random_theta(rng)
        worst = max(worst, abs(constraint_drift(random_chart1(rng, th), th)))
    return SuiteResult("constraint_drift", n, worst)


def even_reduction(rng, n=50):
    worst = 0.0
    for _ in range(n):
        th = random_theta(rng, 2.0)
        Qj = EvenJet(*random_Q_jet(rng, th))
        worst = max(worst, abs(q_jet_residual(even_to_q_jet(Qj), th)),
                    abs(classical_y_residual(even_to_y_jet(Qj), th)))
    return SuiteResult("even_reduction", n, worst)


def swap_jet(rng, n=50):
    worst = 0.0
    for _ in range(n):
        th = random_theta(rng, 2.0)
        q, dq, d2q, t = bt_swap_jet(*random_q_jet(rng, th))
        worst = max(worst, abs(d2q - degpv_rhs(q, dq, t, Theta(th.theta1, th.theta0))))
    return SuiteResult("swap_jet", n, worst)


def cubic_singular(rng=None):
    cases = [(3, 2), (-1.5, 2), (3, -2), (0.5j, -2), (2, 4), (2, -0.7), (-2, 1.25), (-2, 3j)]
    worst = 0.0
    n = 0
    for s0, s1 in cases:
        for pt in mono.cubic_singular_points(s0, s1):
            n += 1
            vals = (mono.cubic_residual(pt, s0, s1),) + mono.cubic_gradient(pt, s0, s1)
            worst = max(worst, max(abs(v) for v in vals))
    return SuiteResult("cubic_singular_points", n, worst)


def chart_transition(rng, n=20):
    worst = 0.0
    for _ in range(n):
        th = random_theta(rng)
        p1 = random_chart1(rng, th)
        p2 = transition_1to2(p1, th)
        back = transition_2to1(p2, th)
        a1, a2 = chart1_matrix(p1, th), chart2_matrix(p2, th)
        worst = max(worst, certify_equivalence(a1, a2, gauge_1to2(p1)),
                    abs(back.a0 - p1.a0), abs(back.b0 - p1.b0), abs(back.c1 - p1.c1))
    return SuiteResult("chart_transition", n, worst)


def invariant_line(rng=None):
    # worked case b = c = z, beta - alpha = 1, where a_3 = 1/16
    z = PolyZ.z()
    x = invariant_line_series(0, 1, z, z, 12)
    worst = float(np.max(np.abs(invariant_line_defect(0, 1, z, z, x, 12))))
    worst = max(worst, abs(x.array(4)[3] - 1 / 16))
    return SuiteResult("invariant_line", 1, worst)


SUITES = (zero_curvature, constraint, even_reduction, swap_jet, cubic_singular,
          chart_transition, invariant_line)


def run_all(seed=0):
    rng = np.random.default_rng(seed)
    return [s(rng) for s in SUITES]
