import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from degpv.algebra import PolyZ, RatMat2, commutator, matmul, poly_eval, residue_at
from degpv.errors import HigherOrderPole

H = RatMat2.constant([[1, 0], [0, -1]])
E1 = RatMat2.constant([[0, 1], [0, 0]])
E2 = RatMat2.constant([[0, 0], [1, 0]])
Z = PolyZ.z()
ZZ1 = PolyZ([0, -1, 1])  # z(z-1)

cplx = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
polys = st.lists(cplx, max_size=6).map(PolyZ)


def random_ratmat(rng, deg=3, den=None):
    num = [PolyZ(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)) for _ in range(4)]
    return RatMat2(num, den if den is not None else PolyZ(rng.normal(size=3) + 1j * rng.normal(size=3)))


@pytest.mark.parametrize("coeffs, z, expected", [
    ([1, 0, 1], 2, 5),
    ([], 3 + 4j, 0),
    ([-1, 2, 1], 1j, -2 + 2j),
])
def test_poly_eval(coeffs, z, expected):
    assert poly_eval(PolyZ(coeffs), z) == expected


def test_canonical_form_strips_trailing_zeros():
    assert PolyZ([1, 2, 0, 0]).coeffs == (1, 2)
    assert PolyZ([0, 0]).coeffs == ()
    assert PolyZ([1, 1e-15]).degree == 0
    assert PolyZ([]).degree == -1


def test_ratmat_denominator_made_monic():
    m = RatMat2([[Z, 1], [0, 2]], PolyZ([0, 2]))
    assert m.den.coeffs == (0, 1)
    assert m.entry(1, 1).coeffs == (1,)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RatMat2([[1, 0], [0, 1]], PolyZ())


@given(polys)
def test_canonicalize_idempotent(p):
    assert PolyZ(PolyZ(p.coeffs)) == p
    m = RatMat2([p, p, 1, 0], PolyZ([3, 1]))
    assert m.canonical() == m


@given(polys, polys, cplx)
def test_eval_is_ring_homomorphism(p, q, z):
    scale = 1 + abs(poly_eval(p, z)) * abs(poly_eval(q, z)) + abs(poly_eval(p, z)) + abs(poly_eval(q, z))
    assert abs(poly_eval(p * q, z) - poly_eval(p, z) * poly_eval(q, z)) <= 1e-9 * scale
    assert abs(poly_eval(p + q, z) - (poly_eval(p, z) + poly_eval(q, z))) <= 1e-9 * scale


def test_matmul_identity_and_inverse():
    rng = np.random.default_rng(1)
    m = random_ratmat(rng)
    prod = matmul(RatMat2.identity(), m)
    for z in [0.3 + 0.2j, -1.5j, 2.0]:
        np.testing.assert_allclose(prod(z), m(z), rtol=1e-12)
    c = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    prod = matmul(RatMat2.constant(c), RatMat2.constant(np.linalg.inv(c)))
    np.testing.assert_allclose(prod(0.7), np.eye(2), atol=1e-12)
    # symbolic inverse of a z-dependent matrix
    np.testing.assert_allclose((m @ m.inverse())(0.4 - 0.9j), np.eye(2), atol=1e-10)


def test_matmul_hand_example():
    m = RatMat2([[0, Z], [1, 0]])
    sq = m @ m
    assert sq.entry(0, 0).allclose(Z) and sq.entry(1, 1).allclose(Z)
    assert sq.entry(0, 1).is_zero() and sq.entry(1, 0).is_zero()


def test_matmul_agrees_with_pointwise_product():
    rng = np.random.default_rng(7)
    a = random_ratmat(rng)
    b = random_ratmat(rng, den=ZZ1)
    ab = a @ b
    for z in rng.normal(size=20) + 1j * rng.normal(size=20):
        np.testing.assert_allclose(ab(z), a(z) @ b(z), rtol=1e-9, atol=1e-12)


def test_commutator_sl2_relations():
    c = commutator(H, E1)
    np.testing.assert_allclose(c(0.0), 2 * E1(0.0))
    np.testing.assert_allclose(commutator(E1, E2)(0.0), H(0.0))
    np.testing.assert_allclose(commutator(H, E2)(0.0), -2 * E2(0.0))


def test_commutator_traceless():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = random_ratmat(rng), random_ratmat(rng, den=ZZ1)
        c = commutator(a, b)
        assert c.trace_numerator().max_abs() < 1e-12 * max(1.0, c.max_coeff())
        assert commutator(a, a).max_coeff() < 1e-12 * max(1.0, (a @ a).max_coeff())


def test_derivative_matches_finite_difference():
    rng = np.random.default_rng(5)
    m = random_ratmat(rng, den=ZZ1)
    z, h = 0.4 + 0.3j, 1e-6
    fd = (m(z + h) - m(z - h)) / (2 * h)
    np.testing.assert_allclose(m.derivative()(z), fd, rtol=1e-7)


def test_residue_partial_fractions():
    m = RatMat2([[1, 0], [0, 0]], ZZ1)
    np.testing.assert_allclose(residue_at(m, 0), [[-1, 0], [0, 0]])
    np.testing.assert_allclose(residue_at(m, 1), [[1, 0], [0, 0]])


def test_residue_regular_point_and_numerator_value():
    m = RatMat2([[1, 0], [0, 0]], ZZ1)
    np.testing.assert_array_equal(residue_at(m, 2), np.zeros((2, 2)))
    m = RatMat2([[Z, 0], [0, 0]], PolyZ([-1, 1]))
    np.testing.assert_allclose(residue_at(m, 1), [[1, 0], [0, 0]])


def test_residue_cancellation_and_higher_order():
    # z / z^2 has a simple pole after cancellation
    m = RatMat2([[Z, 0], [0, 0]], Z * Z)
    np.testing.assert_allclose(residue_at(m, 0), [[1, 0], [0, 0]])
    with pytest.raises(HigherOrderPole):
        residue_at(RatMat2([[1, 0], [0, 0]], Z * Z), 0)


def test_cancel_root():
    m = RatMat2([[ZZ1, ZZ1 * Z], [0, ZZ1 * 3]], ZZ1)
    reduced = m.cancel_root(0).cancel_root(1)
    assert reduced.den.coeffs == (1,)
    assert reduced.entry(0, 1).allclose(Z)
    # not a common root: unchanged
    assert m.cancel_root(5) is m
