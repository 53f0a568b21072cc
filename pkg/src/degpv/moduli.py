"""The two affine charts of the moduli space of connections M(theta0, theta1).

Chart 1 (b1 normalized to 1) carries the coordinates (a0, b0, c1, t) and
the connection

    d/dz + 1/(z(z-1)) [[a0, c0 + c1 z + t^2 z^2], [z + b0, -a0]],

chart 2 (b0 normalized to 1) carries (a2, b1, c1, t) and

    d/dz + 1/(z(z-1)) [[a2 z^2, th0^2/4 + c1 z + c2 z^2 + c3 z^3], [1 + b1 z, -a2 z^2]].

Matrices follow the column convention: column j holds the coordinates of
D e_j, so a change of basis f = e P acts as A -> P^-1 A P + P^-1 dP/dz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import PolyZ, RatMat2
from .errors import DegenerateInput, NotInOverlap, ResonantExponents

ON_VARIETY_TOL = 1e-9
ZZ1 = PolyZ([0, -1, 1])


@dataclass(frozen=True)
class Theta:
    """Local exponent parameters at z = 0 and z = 1."""

    theta0: complex
    theta1: complex

    @property
    def omega0(self):
        return self.theta0 / 2

    @property
    def omega1(self):
        return self.theta1 / 2

    @property
    def sq0(self):
        """theta0^2 / 4"""
        return self.theta0 * self.theta0 / 4

    @property
    def sq1(self):
        """theta1^2 / 4"""
        return self.theta1 * self.theta1 / 4


@dataclass(frozen=True)
class Chart1Point:
    a0: complex
    b0: complex
    c1: complex
    t: complex

    def __post_init__(self):
        if self.t == 0:
            raise DegenerateInput("t must be nonzero")

    def on_variety(self, th: Theta, tol=ON_VARIETY_TOL) -> bool:
        return abs(chart1_residual(self, th)) <= tol


@dataclass(frozen=True)
class Chart2Point:
    a2: complex
    b1: complex
    c1: complex
    t: complex

    def __post_init__(self):
        if self.t == 0:
            raise DegenerateInput("t must be nonzero")

    def on_variety(self, th: Theta, tol=ON_VARIETY_TOL) -> bool:
        return abs(chart2_residual(self, th)) <= tol


@dataclass(frozen=True)
class GaugeTransform:
    """Basis change e1 -> lam e1, e2 -> e2 + (x0 + x1 z) e1."""

    lam: complex = 1.0
    x0: complex = 0.0
    x1: complex = 0.0

    def __post_init__(self):
        if self.lam == 0:
            raise DegenerateInput("gauge scaling lambda must be nonzero")

    def matrix(self) -> RatMat2:
        return RatMat2([[self.lam, PolyZ([self.x0, self.x1])], [0, 1]])

    def inverse_matrix(self) -> RatMat2:
        inv = 1 / self.lam
        return RatMat2([[inv, PolyZ([-self.x0 * inv, -self.x1 * inv])], [0, 1]])


def chart1_c0(p: Chart1Point, th: Theta) -> complex:
    """c0 eliminated through the exponent condition at z = 1."""
    t2 = p.t * p.t
    return -th.sq0 + th.sq1 - p.c1 - t2 - p.b0 * p.c1 - p.b0 * t2


def chart1_residual(p: Chart1Point, th: Theta) -> complex:
    """Defining equation of M1; zero on the variety."""
    return p.a0 * p.a0 + p.b0 * chart1_c0(p, th) - th.sq0


def chart2_c2_c3(p: Chart2Point, th: Theta):
    t2 = p.t * p.t
    c2 = -(p.c1 + t2 + p.b1 * th.sq0 + p.b1 * p.c1 - p.a2 + th.sq0 - th.sq1)
    c3 = t2 - p.b1 * c2 - p.a2
    return c2, c3


def chart2_residual(p: Chart2Point, th: Theta) -> complex:
    c2, _ = chart2_c2_c3(p, th)
    return p.a2 * p.a2 + p.b1 * (-p.a2 - p.b1 * c2 + p.t * p.t)


@dataclass(frozen=True)
class SingularPoint:
    chart: int
    coords: tuple  # (a0, b0, c1) for chart 1, (a2, b1, c1) for chart 2
    t: complex

    def point(self):
        cls = Chart1Point if self.chart == 1 else Chart2Point
        return cls(*self.coords, self.t)


def singular_locus(th: Theta, t: complex) -> list:
    """Singular points of both charts at fixed t.

    Theta values are compared with zero exactly.
    """
    if t == 0:
        raise DegenerateInput("t must be nonzero")
    t2 = t * t
    z0, z1 = th.theta0 == 0, th.theta1 == 0
    out = []
    if z0 and not z1:
        out.append(SingularPoint(1, (0j, 0j, -t2 + th.sq1), t))
    elif z1 and not z0:
        out.append(SingularPoint(1, (0j, -1 + 0j, -t2 + th.sq0), t))
    elif z0 and z1:
        out.append(SingularPoint(1, (0j, 0j, -t2), t))
        out.append(SingularPoint(1, (0j, -1 + 0j, -t2), t))
    if z1:
        out.append(SingularPoint(2, (0j, -1 + 0j, t2 - th.sq0), t))
    return out


def apply_gauge(g: GaugeTransform, a: RatMat2) -> RatMat2:
    """Connection matrix of d/dz + a in the basis changed by ``g``.

    Returns P^-1 a P + P^-1 dP/dz with P = [[lam, x0 + x1 z], [0, 1]].
    Equivalently U a U^-1 - (dU/dz) U^-1 for U = P^-1, the form acting on
    solutions of Y' = -a Y.
    """
    p, pinv = g.matrix(), g.inverse_matrix()
    return (pinv @ a @ p) + (pinv @ p.derivative())


def chart1_matrix(p: Chart1Point, th: Theta) -> RatMat2:
    c0 = chart1_c0(p, th)
    return RatMat2([[p.a0, PolyZ([c0, p.c1, p.t * p.t])], [PolyZ([p.b0, 1]), -p.a0]], ZZ1)


def chart2_matrix(p: Chart2Point, th: Theta) -> RatMat2:
    c2, c3 = chart2_c2_c3(p, th)
    diag = PolyZ([0, 0, p.a2])
    return RatMat2([[diag, PolyZ([th.sq0, p.c1, c2, c3])], [PolyZ([1, p.b1]), -diag]], ZZ1)


def gauge_1to2(p: Chart1Point) -> GaugeTransform:
    """The element of G carrying chart-1 normal form into chart-2 normal form."""
    if p.b0 == 0:
        raise NotInOverlap("chart 1 point with b0 = 0 is not in chart 2")
    x0 = p.a0 / p.b0
    return GaugeTransform(1 / p.b0, x0, -x0 / p.b0)


def gauge_2to1(p: Chart2Point) -> GaugeTransform:
    if p.b1 == 0:
        raise NotInOverlap("chart 2 point with b1 = 0 is not in chart 1")
    x1 = p.a2 / p.b1
    return GaugeTransform(1 / p.b1, -x1 / p.b1, x1)


def _upper_right_numerator(a: RatMat2, g: GaugeTransform) -> PolyZ:
    # numerator of the gauge-transformed (0, 1) entry over z(z-1)
    alpha, gamma, beta = a.num[0], a.num[1], a.num[2]
    x = PolyZ([g.x0, g.x1])
    return (gamma + 2 * alpha * x - beta * x * x + g.x1 * ZZ1) * (1 / g.lam)


def transition_1to2(p: Chart1Point, th: Theta) -> Chart2Point:
    g = gauge_1to2(p)
    ur = _upper_right_numerator(chart1_matrix(p, th), g)
    return Chart2Point(p.a0 / (p.b0 * p.b0), 1 / p.b0, ur.array(4)[1], p.t)


def transition_2to1(p: Chart2Point, th: Theta) -> Chart1Point:
    g = gauge_2to1(p)
    ur = _upper_right_numerator(chart2_matrix(p, th), g)
    return Chart1Point(p.a2 / (p.b1 * p.b1), 1 / p.b1, ur.array(4)[1], p.t)


def certify_equivalence(a1: RatMat2, a2: RatMat2, g: GaugeTransform, samples: int = 20,
                        rng=None) -> float:
    """Max entrywise |apply_gauge(g, a1) - a2| over random z away from the poles.

    Each sample is scaled by max(1, |a2(z)|), so points near the edge of a
    chart (where the coordinates blow up) are judged relative to their size.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(0) if rng is None else rng
    moved = apply_gauge(g, a1)
    worst = 0.0
    drawn = 0
    while drawn < samples:
        z = complex(*rng.uniform(-2, 2, size=2))
        if min(abs(z), abs(z - 1)) < 0.1:
            continue
        drawn += 1
        ref = a2(z)
        scale = max(1.0, float(np.max(np.abs(ref))))
        worst = max(worst, float(np.max(np.abs(moved(z) - ref))) / scale)
    return worst


def invariant_line_series(alpha: complex, beta: complex, b: PolyZ, c: PolyZ,
                          n_terms: int) -> PolyZ:
    """Power series x = sum_{n>=1} a_n z^n solving z x' + (beta - alpha) x + b - c x^2 = 0.

    ``b`` and ``c`` are polynomials (or truncated series) without constant
    term. Returns the truncation through z^n_terms.
    """
    d = complex(beta - alpha)
    if d.imag == 0 and d.real < 0 and d.real == math.floor(d.real):
        raise ResonantExponents(f"beta - alpha = {d} is a negative integer")
    b, c = PolyZ(b), PolyZ(c)
    if abs(b.array(1)[0]) > 0 or abs(c.array(1)[0]) > 0:
        raise DegenerateInput("b and c must vanish at z = 0")
    bn = b.array(n_terms + 1)
    cn = c.array(n_terms + 1)
    a = np.zeros(n_terms + 1, dtype=complex)
    sq = np.zeros(n_terms + 1, dtype=complex)  # coefficients of x^2
    for n in range(1, n_terms + 1):
        # x^2 through z^n only involves a_1 .. a_{n-1}
        sq[n] = np.dot(a[1:n], a[n - 1:0:-1])
        forcing = np.dot(cn[1:n + 1], sq[n - 1::-1]) if n > 1 else 0j
        a[n] = (forcing - bn[n]) / (n + d)
    return PolyZ(a)


def invariant_line_defect(alpha, beta, b: PolyZ, c: PolyZ, x: PolyZ, n_terms: int) -> np.ndarray:
    """First ``n_terms`` series coefficients (z^1 ..) of z x' + (beta - alpha) x + b - c x^2."""
    z = PolyZ.z()
    expr = z * x.deriv() + (beta - alpha) * x + PolyZ(b) - PolyZ(c) * x * x
    return expr.array(n_terms + 1)[1:]
