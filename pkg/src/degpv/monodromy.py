"""Monodromy of d/dz + A and the cubic surface of its trace coordinates.

Horizontal sections solve Y' = -A Y. Loops are based at a common point and
run counterclockwise: out along a segment, once around a circle, back along
the same segment. Only traces leave this module, so the ordering and
inverse conventions of the loop product do not matter.

The character variety is the cubic surface

    x1 x2 x3 + x1^2 + x2^2 + s0 x1 + s1 x2 + 1 = 0,

with s0 = tr M0, s1 = tr M1 and x3 = tr(M0 M1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import RatMat2
from .errors import DegenerateInput, PathTooClose
from .integrate import integrate_polyline, rk_path
from .laxpair import ConnectionA, build_A_chart1
from .moduli import Chart1Point, Theta

POLES = (0.0, 1.0)
MIN_POLE_DISTANCE = 0.05


@dataclass(frozen=True)
class MonodromyInvariants:
    tr_m0: complex
    tr_m1: complex
    tr_m0m1: complex

    def as_tuple(self):
        return (self.tr_m0, self.tr_m1, self.tr_m0m1)


@dataclass(frozen=True)
class CubicPoint:
    x1: complex
    x2: complex
    x3: complex


@dataclass(frozen=True)
class RPlusPoint:
    x1: complex
    x2: complex
    x3: complex
    y1: complex


@dataclass(frozen=True)
class Contour:
    base: complex
    center: complex
    radius: float
    orientation: int = 1

    def __post_init__(self):
        if not self.radius > 0:
            raise DegenerateInput("contour radius must be positive")
        if self.orientation not in (1, -1):
            raise DegenerateInput("orientation must be +1 or -1")
        for pole in POLES:
            if pole == self.center:
                continue
            if abs(abs(pole - self.center) - self.radius) < 0.1 * self.radius:
                raise PathTooClose(f"circle around {self.center} runs too close to {pole}")
            if abs(pole - self.center) < self.radius:
                raise PathTooClose(f"circle around {self.center} encloses {pole} as well")
        if abs(self.base - self.center) <= self.radius:
            raise DegenerateInput("base point must lie outside the circle")

    def entry(self) -> complex:
        d = self.base - self.center
        return self.center + self.radius * d / abs(d)


@dataclass(frozen=True)
class ContourConfig:
    base: complex = 0.5 + 0.75j
    radius: float = 0.3

    def contours(self):
        return Contour(self.base, 0.0, self.radius), Contour(self.base, 1.0, self.radius)


def _as_matrix(a) -> RatMat2:
    return a.matrix if isinstance(a, ConnectionA) else a


def _rhs(a: RatMat2):
    def f(z, y):
        m = a.evaluate(z)
        return -(m @ y.reshape(2, 2)).ravel()
    return f


def _segment_pole_distance(p0, p1, poles):
    d = p1 - p0
    out = math.inf
    for c in poles:
        u = 0.0 if d == 0 else min(1.0, max(0.0, ((c - p0) * d.conjugate()).real / abs(d) ** 2))
        out = min(out, abs(p0 + u * d - c))
    return out


def _pole_list(a: RatMat2):
    roots = np.roots(np.asarray(a.den.coeffs[::-1], dtype=complex)) if a.den.degree > 0 else []
    return [complex(r) for r in roots]


def transport(a, path, tol=1e-10) -> np.ndarray:
    """Transport matrix of Y' = -A Y along a polyline, starting from Y = I."""
    m = _as_matrix(a)
    pts = np.asarray(path, dtype=complex)
    poles = _pole_list(m)
    for p0, p1 in zip(pts[:-1], pts[1:]):
        if _segment_pole_distance(p0, p1, poles) < MIN_POLE_DISTANCE:
            raise PathTooClose(f"segment {p0} -> {p1} passes within {MIN_POLE_DISTANCE} of a pole")
    if len(pts) == 1 and _segment_pole_distance(pts[0], pts[0], poles) < MIN_POLE_DISTANCE:
        raise PathTooClose("path point too close to a pole")
    _, ys = integrate_polyline(_rhs(m), pts, np.eye(2, dtype=complex).ravel(),
                               rtol=tol, atol=tol * 1e-2)
    return ys[-1].reshape(2, 2)


def _circle(a: RatMat2, c: Contour, y0, tol):
    z0 = c.entry()
    phi0 = cmath.phase(z0 - c.center)
    w = 2 * math.pi * c.orientation

    def x(s):
        return c.center + c.radius * cmath.exp(1j * (phi0 + w * s))

    def dx(s):
        return 1j * w * c.radius * cmath.exp(1j * (phi0 + w * s))

    return rk_path(_rhs(a), x, dx, y0, [0.0, 1.0], rtol=tol, atol=tol * 1e-2)[-1]


def loop_transport(a, contour: Contour, tol=1e-10) -> np.ndarray:
    """Transport around ``contour``: segment in, full circle, segment back."""
    m = _as_matrix(a)
    poles = _pole_list(m)
    entry = contour.entry()
    if _segment_pole_distance(contour.base, entry, poles) < MIN_POLE_DISTANCE:
        raise PathTooClose("connecting segment runs too close to a pole")
    for pole in poles:
        if abs(pole - contour.center) > 1e-12 and \
                abs(abs(pole - contour.center) - contour.radius) < MIN_POLE_DISTANCE:
            raise PathTooClose("circle runs too close to a pole")
    y = transport(m, [contour.base, entry], tol).ravel()
    y = _circle(m, contour, y, tol)
    back = transport(m, [entry, contour.base], tol)
    return back @ y.reshape(2, 2)


def monodromy_matrices(p: Chart1Point, th: Theta, cfg: ContourConfig | None = None, tol=1e-10):
    cfg = cfg or ContourConfig()
    a = build_A_chart1(p, th).matrix
    c0, c1 = cfg.contours()
    return loop_transport(a, c0, tol), loop_transport(a, c1, tol)


def monodromy_invariants(p: Chart1Point, th: Theta, cfg: ContourConfig | None = None,
                         tol=1e-10) -> MonodromyInvariants:
    m0, m1 = monodromy_matrices(p, th, cfg, tol)
    return MonodromyInvariants(complex(np.trace(m0)), complex(np.trace(m1)),
                               complex(np.trace(m0 @ m1)))


def expected_s(th: Theta):
    def s(x):
        return cmath.exp(1j * math.pi * x) + cmath.exp(-1j * math.pi * x)
    return s(th.theta0), s(th.theta1)


def isomonodromy_drift(traj, n_checks=5, cfg: ContourConfig | None = None, tol=1e-10) -> float:
    """Largest pairwise deviation of the invariants over n_checks trajectory points."""
    from .painleve import qp_to_chart

    n = len(traj)
    if n <= 1 or n_checks <= 1:
        return 0.0
    idx = sorted(set(np.linspace(0, n - 1, min(n_checks, n)).round().astype(int)))
    vals = np.array([monodromy_invariants(qp_to_chart(traj.state(i)), traj.theta, cfg, tol).as_tuple()
                     for i in idx])
    return float(max(np.ptp(vals.real, axis=0).max(), np.ptp(vals.imag, axis=0).max(),
                     max(abs(vals[i] - vals[j]).max() for i in range(len(vals)) for j in range(i))))


# -- the cubic surface ------------------------------------------------------

def cubic_residual(pt: CubicPoint, s0, s1):
    x1, x2, x3 = pt.x1, pt.x2, pt.x3
    return x1 * x2 * x3 + x1 * x1 + x2 * x2 + s0 * x1 + s1 * x2 + 1


def cubic_gradient(pt: CubicPoint, s0, s1):
    x1, x2, x3 = pt.x1, pt.x2, pt.x3
    return (x2 * x3 + 2 * x1 + s0, x1 * x3 + 2 * x2 + s1, x1 * x2)


def cubic_singular_points(s0, s1) -> list:
    out = []
    if s1 == 2:
        out.append(CubicPoint(0, -1, s0))
    if s1 == -2:
        out.append(CubicPoint(0, 1, -s0))
    if s0 == 2:
        out.append(CubicPoint(-1, 0, s1))
    if s0 == -2:
        out.append(CubicPoint(1, 0, -s1))
    return out


def rplus_residuals(pt: RPlusPoint, s0):
    """The three relations of the y0 = 1 chart of the blow-up over s1 = 2."""
    x1, x2, x3, y1 = pt.x1, pt.x2, pt.x3, pt.y1
    return (cubic_residual(CubicPoint(x1, x2, x3), s0, 2),
            (x2 + 1) + x1 * y1,
            (1 + x2) * y1 - x2 * x3 - x1 - s0)


def rplus_fiber(s0, samples: int) -> list:
    """Points (0, -1, s0, a) of the exceptional line, a on an even grid in [-2, 2]."""
    if s0 == 2 or s0 == -2:
        raise DegenerateInput("s0 = +-2 is not covered by this chart")
    if samples <= 0:
        return []
    grid = [0.0] if samples == 1 else np.linspace(-2.0, 2.0, samples)
    return [RPlusPoint(0, -1, s0, float(a)) for a in grid]


def rplus_blowdown(pt: RPlusPoint) -> CubicPoint:
    return CubicPoint(pt.x1, pt.x2, pt.x3)
