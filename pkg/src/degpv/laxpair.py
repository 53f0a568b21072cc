"""Lax pair on the first chart: A(z, t), B(z, t) and the zero-curvature check.

The connection d/dz + A and the deformation d/dt + B commute exactly when

    dA/dt = dB/dz + [A, B],

where dA/dt is the total derivative along the isomonodromic vector field.
Everything here is built on chart 1; chart-2 points go through
``moduli.transition_2to1`` first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import PolyZ, RatMat2, commutator
from .errors import DegenerateInput
from .moduli import (
    ZZ1, Chart1Point, Chart2Point, Theta, chart1_c0, chart1_matrix, chart2_matrix,
)


@dataclass(frozen=True)
class ConnectionA:
    matrix: RatMat2
    chart: int
    point: object
    theta: Theta

    def __call__(self, z):
        return self.matrix.evaluate(z)


@dataclass(frozen=True)
class DeformationB:
    bh0: complex
    bh1: complex
    b10: complex
    b11: complex
    b20: complex
    b21: complex

    def matrix(self) -> RatMat2:
        h = PolyZ([self.bh0, self.bh1])
        return RatMat2([[h, PolyZ([self.b10, self.b11])], [PolyZ([self.b20, self.b21]), -h]])


def _check_t(t):
    if t == 0:
        raise DegenerateInput("t must be nonzero")


def build_A_chart1(p: Chart1Point, th: Theta) -> ConnectionA:
    _check_t(p.t)
    return ConnectionA(chart1_matrix(p, th), 1, p, th)


def build_A_chart2(p: Chart2Point, th: Theta) -> ConnectionA:
    _check_t(p.t)
    return ConnectionA(chart2_matrix(p, th), 2, p, th)


def build_B(p: Chart1Point) -> DeformationB:
    """Coefficients of B solved degree by degree from the zero-curvature equation."""
    _check_t(p.t)
    t = p.t
    return DeformationB(0j, 0j, 2 * p.c1 / t - 2 * t * p.b0, 2 * t, 2 / t, 0j)


def vector_field(p: Chart1Point, th: Theta):
    """(da0/dt, db0/dt, dc1/dt) with c0 eliminated."""
    _check_t(p.t)
    t = p.t
    c0 = chart1_c0(p, th)
    da0 = 2 * c0 / t - p.b0 * (2 * p.c1 / t - 2 * t * p.b0)
    dc1 = -2 * t + 4 * p.a0 * t
    db0 = -4 * p.a0 / t
    return da0, db0, dc1


def _dc0_dt(p: Chart1Point, db0, dc1):
    # total t-derivative of chart1_c0; theta is constant
    t = p.t
    return -dc1 - 2 * t - db0 * p.c1 - p.b0 * dc1 - db0 * t * t - 2 * p.b0 * t


def zero_curvature_residual(p: Chart1Point, th: Theta, field=None) -> RatMat2:
    """dA/dt - dB/dz - [A, B] as a rational matrix over z(z - 1).

    ``field`` overrides the (da0, db0, dc1) triple; by default it comes from
    ``vector_field``.
    """
    _check_t(p.t)
    da0, db0, dc1 = vector_field(p, th) if field is None else field
    t = p.t
    dc0 = _dc0_dt(p, db0, dc1)
    dA = RatMat2([[da0, PolyZ([dc0, dc1, 2 * t])], [db0, -da0]], ZZ1)
    a = chart1_matrix(p, th)
    b = build_B(p).matrix()
    return dA - b.derivative() - commutator(a, b)


def residual_polynomials(res: RatMat2):
    """The four numerator polynomials of z(z-1) * res (a polynomial matrix)."""
    scaled = res.mul_poly(ZZ1).cancel_root(0).cancel_root(1).cancel_root(0).cancel_root(1)
    if scaled.den.degree > 0:
        raise ValueError("residual is not a polynomial after multiplying by z(z-1)")
    lead = scaled.den.coeffs[0]
    return [n * (1 / lead) for n in scaled.num]


def sl2_components(polys):
    """Split a traceless polynomial matrix into its H, E1, E2 coefficients.

    Returns (h, e1, e2, trace) with h = (m00 - m11)/2; trace should vanish.
    """
    m00, m01, m10, m11 = polys
    return (m00 - m11) * 0.5, m01, m10, m00 + m11


def constraint_drift(p: Chart1Point, th: Theta, field=None) -> complex:
    """d/dt of a0^2 + b0 c0 - theta0^2/4 along the flow."""
    da0, db0, dc1 = vector_field(p, th) if field is None else field
    c0 = chart1_c0(p, th)
    return 2 * p.a0 * da0 + db0 * c0 + p.b0 * _dc0_dt(p, db0, dc1)
