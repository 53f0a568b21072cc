"""Univariate polynomials and 2x2 rational-function matrices in z.

Coefficients are complex doubles. "Exact" here means symbolic in z: a
matrix such as ``A(z)`` is carried as four numerator polynomials over one
shared denominator, and identities like the zero-curvature equation can be
checked coefficient by coefficient instead of at sample points.
"""

from __future__ import annotations

import numpy as np

from .errors import HigherOrderPole

__all__ = [
    "PolyZ",
    "RatMat2",
    "poly_eval",
    "matmul",
    "commutator",
    "residue_at",
    "ZERO_RTOL",
]

# Coefficients below ZERO_RTOL * max|coefficient| are dropped from the top.
ZERO_RTOL = 1e-13
# Remainder threshold used when deciding whether a point is a root.
_ROOT_RTOL = 1e-10


def _strip(coeffs):
    c = [complex(x) for x in coeffs]
    if not c:
        return ()
    scale = max(abs(x) for x in c)
    if scale == 0.0:
        return ()
    cut = ZERO_RTOL * scale
    n = len(c)
    while n and abs(c[n - 1]) <= cut:
        n -= 1
    return tuple(c[:n])


class PolyZ:
    """Polynomial in z, coefficients stored lowest degree first.

    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, PolyZ):
            coeffs = coeffs.coeffs
        object.__setattr__(self, "coeffs", _strip(list(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("PolyZ is immutable")

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def z(cls):
        return cls([0, 1])

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def array(self, length=None):
        n = len(self.coeffs) if length is None else length
        out = np.zeros(n, dtype=complex)
        m = min(n, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def __call__(self, z):
        return poly_eval(self, z)

    def __repr__(self):
        return f"PolyZ({list(self.coeffs)!r})"

    def __eq__(self, other):
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def allclose(self, other, atol=1e-12):
        n = max(len(self.coeffs), len(other.coeffs))
        return bool(np.all(np.abs(self.array(n) - other.array(n)) <= atol))

    def max_abs(self):
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __neg__(self):
        return PolyZ([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, PolyZ):
            other = PolyZ.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyZ(self.array(n) + other.array(n))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PolyZ):
            other = PolyZ.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return PolyZ.const(other) - self

    def __mul__(self, other):
        if isinstance(other, PolyZ):
            if self.is_zero() or other.is_zero():
                return PolyZ()
            return PolyZ(np.convolve(self.array(), other.array()))
        return PolyZ([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def deriv(self):
        return PolyZ([k * c for k, c in enumerate(self.coeffs)][1:])

    def divide_linear(self, root):
        """Synthetic division by (z - root); returns (quotient, remainder)."""
        if self.is_zero():
            return PolyZ(), 0j
        c = self.coeffs
        out = [0j] * (len(c) - 1)
        acc = 0j
        for k in range(len(c) - 1, -1, -1):
            acc = acc * root + c[k]
            if k:
                out[k - 1] = acc
        return PolyZ(out), acc

    def root_order(self, root, limit=None):
        """Multiplicity of ``root`` as a zero, up to ``limit``."""
        p = self
        order = 0
        while not p.is_zero() and (limit is None or order < limit):
            quo, rem = p.divide_linear(root)
            scale = max(1.0, p.max_abs()) * max(1.0, abs(root)) ** max(p.degree, 0)
            if abs(rem) > _ROOT_RTOL * scale:
                break
            p = quo
            order += 1
        return order, p


def poly_eval(p: PolyZ, z: complex) -> complex:
    """Horner evaluation of ``p`` at ``z``."""
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def _as_poly(x):
    return x if isinstance(x, PolyZ) else PolyZ.const(x)


class RatMat2:
    """2x2 matrix of rational functions with one shared denominator.

    ``num`` is a row-major tuple ``(n00, n01, n10, n11)`` of PolyZ. The
    denominator is scaled to be monic on construction.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if len(num) == 2:
            num = (num[0][0], num[0][1], num[1][0], num[1][1])
        num = tuple(_as_poly(x) for x in num)
        den = PolyZ.const(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("RatMat2 denominator is the zero polynomial")
        lead = den.coeffs[-1]
        if lead != 1:
            num = tuple(p * (1 / lead) for p in num)
            den = den * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatMat2 is immutable")

    @classmethod
    def constant(cls, m):
        m = np.asarray(m, dtype=complex)
        return cls([[m[0, 0], m[0, 1]], [m[1, 0], m[1, 1]]])

    @classmethod
    def identity(cls):
        return cls.constant(np.eye(2))

    @classmethod
    def zero(cls):
        return cls([PolyZ()] * 4)

    def canonical(self):
        """Re-run canonicalization. Construction already canonicalizes."""
        return RatMat2(self.num, self.den)

    def __repr__(self):
        n = [list(p.coeffs) for p in self.num]
        return f"RatMat2(num={n!r}, den={list(self.den.coeffs)!r})"

    def __eq__(self, other):
        if not isinstance(other, RatMat2):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def entry(self, i, j):
        return self.num[2 * i + j]

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z):
        d = poly_eval(self.den, z)
        return np.array([[poly_eval(self.num[0], z), poly_eval(self.num[1], z)],
                         [poly_eval(self.num[2], z), poly_eval(self.num[3], z)]]) / d

    def _same_den(self, other):
        return self.den.allclose(other.den, atol=1e-14)

    def __add__(self, other):
        if self._same_den(other):
            return RatMat2([a + b for a, b in zip(self.num, other.num)], self.den)
        return RatMat2([a * other.den + b * self.den for a, b in zip(self.num, other.num)],
                       self.den * other.den)

    def __neg__(self):
        return RatMat2([-p for p in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        return matmul(self, other)

    def scale(self, c):
        return RatMat2([p * c for p in self.num], self.den)

    def mul_poly(self, p):
        return RatMat2([n * p for n in self.num], self.den)

    def derivative(self):
        """d/dz by the quotient rule (the denominator is squared)."""
        dd = self.den.deriv()
        if dd.is_zero():
            return RatMat2([p.deriv() for p in self.num], self.den)
        return RatMat2([p.deriv() * self.den - p * dd for p in self.num], self.den * self.den)

    def trace_numerator(self):
        return self.num[0] + self.num[3]

    def inverse(self):
        n00, n01, n10, n11 = self.num
        det = n00 * n11 - n01 * n10
        if det.is_zero():
            raise ZeroDivisionError("singular rational matrix")
        return RatMat2([n11 * self.den, -n01 * self.den, -n10 * self.den, n00 * self.den], det)

    def cancel_root(self, root):
        """Divide numerator and denominator by (z - root) when both vanish there.

        Returns ``self`` unchanged if the factor is not common.
        """
        dq, dr = self.den.divide_linear(root)
        dscale = max(1.0, self.den.max_abs())
        if abs(dr) > _ROOT_RTOL * dscale:
            return self
        parts = [p.divide_linear(root) for p in self.num]
        nscale = max([1.0] + [p.max_abs() for p in self.num])
        if any(abs(r) > _ROOT_RTOL * nscale for _, r in parts):
            return self
        return RatMat2([q for q, _ in parts], dq)

    def max_coeff(self):
        """Largest numerator coefficient magnitude."""
        return max(p.max_abs() for p in self.num)


def matmul(a: RatMat2, b: RatMat2) -> RatMat2:
    """Matrix product; the result denominator is the product of the two."""
    a00, a01, a10, a11 = a.num
    b00, b01, b10, b11 = b.num
    return RatMat2([a00 * b00 + a01 * b10, a00 * b01 + a01 * b11,
                    a10 * b00 + a11 * b10, a10 * b01 + a11 * b11],
                   a.den * b.den)


def commutator(a: RatMat2, b: RatMat2) -> RatMat2:
    """[a, b] = ab - ba over the common denominator a.den * b.den."""
    ab = matmul(a, b)
    ba = matmul(b, a)
    return RatMat2([x - y for x, y in zip(ab.num, ba.num)], ab.den)


def residue_at(m: RatMat2, pole: complex) -> np.ndarray:
    """Entrywise residue of ``m`` at ``pole``.

    Raises HigherOrderPole if some entry, after cancelling common factors
    of (z - pole), still has a pole of order two or more there.
    """
    k, dred = m.den.root_order(pole)
    out = np.zeros((2, 2), dtype=complex)
    if k == 0:
        return out
    dval = poly_eval(dred, pole)
    for idx, n in enumerate(m.num):
        if n.is_zero():
            continue
        mult, nred = n.root_order(pole, limit=k)
        order = k - mult
        if order >= 2:
            raise HigherOrderPole(f"entry {divmod(idx, 2)} has a pole of order {order} at {pole}")
        if order == 1:
            out[divmod(idx, 2)] = poly_eval(nred, pole) / dval
    return out
