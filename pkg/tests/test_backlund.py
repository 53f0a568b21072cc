import numpy as np
import pytest

from degpv.backlund import (
    BTKind, bt_negate_t, bt_shift, bt_shift_point, bt_swap, bt_swap_jet, bt_theta_flip,
    compose_theta, printed_shift_a, printed_shift_q, shift_q, verify_bt,
)
from degpv.errors import DegenerateInput, FixedSingularity
from degpv.moduli import Chart1Point, Theta
from degpv.monodromy import expected_s, monodromy_invariants
from degpv.painleve import (
    PState, Trajectory, chart_to_qp, degpv_rhs, hamiltonian, integrate_flow, linear_path,
    qp_to_chart,
)
from degpv.sampling import bounded_solutions, random_q_jet, random_theta

TH11 = Theta(1, 1)


@pytest.fixture(scope="module")
def traj():
    return integrate_flow(PState(0.5 + 0.1j, 0.1 - 0.05j, 1.0, TH11), linear_path(1, 1.5, 10))


def test_negate_t(traj):
    img = bt_negate_t(traj)
    assert np.array_equal(img.t, -traj.t) and np.array_equal(img.p, traj.p)
    twice = bt_negate_t(img)
    assert np.array_equal(twice.t, traj.t) and twice.theta == traj.theta
    assert verify_bt(traj, BTKind.NegateT) < 1e-8


def test_negate_t_hamiltonian_is_odd_at_p_zero():
    s = PState(0.3 + 0.2j, 0, 1.4, Theta(0.6, 1.1))
    assert hamiltonian(PState(s.q, 0, -s.t, s.theta)) == pytest.approx(-hamiltonian(s))


def test_negate_t_with_p_flipped_is_not_a_solution(traj):
    # the image must keep p: p = (t/4) q' and both t and q' change sign
    wrong = Trajectory(-traj.t, traj.q, -traj.p, traj.theta, traj.t_path)
    img = bt_negate_t(traj)
    assert np.abs(wrong.p - img.p).max() > 1e-3


def test_theta_flips(traj):
    for which in (0, 1):
        img = bt_theta_flip(traj, which)
        assert np.array_equal(img.q, traj.q) and np.array_equal(img.p, traj.p)
        assert bt_theta_flip(img, which).theta == traj.theta
    assert bt_theta_flip(traj, 0).theta == Theta(-1, 1)
    assert verify_bt(traj, BTKind.FlipTheta0) < 1e-10
    assert verify_bt(traj, BTKind.FlipTheta1) < 1e-10
    s = traj.state(3)
    dq = 4 * s.p / s.t
    assert degpv_rhs(s.q, dq, s.t, Theta(-1, 1)) == degpv_rhs(s.q, dq, s.t, TH11)


def test_swap_jet_examples():
    assert bt_swap_jet(0.5, 0, 3.0, 1.0) == (0.5, 0, 3.0, -1j)
    q, dq, d2q, t = 0.2 + 0.1j, 1.5, -0.7j, 0.9
    twice = bt_swap_jet(*bt_swap_jet(q, dq, d2q, t))
    assert twice == (pytest.approx(q), -dq, d2q, -t)
    with pytest.raises(DegenerateInput):
        bt_swap_jet(q, dq, d2q, 0)


def test_swap_jet_maps_solutions_to_solutions():
    rng = np.random.default_rng(41)
    for _ in range(50):
        th = random_theta(rng, 2)
        q, dq, d2q, t = bt_swap_jet(*random_q_jet(rng, th))
        target = Theta(th.theta1, th.theta0)
        assert abs(d2q - degpv_rhs(q, dq, t, target)) < 1e-10


def test_swap_trajectory_and_square(traj):
    th = Theta(0.3, 0.8)
    tr = integrate_flow(PState(0.5 + 0.1j, 0.1, 1.0, th), linear_path(1, 1.4, 8))
    assert verify_bt(tr, BTKind.Swap) < 1e-10
    img = bt_swap(tr)
    assert img.theta == Theta(0.8, 0.3)
    twice = bt_swap(img)
    neg = bt_negate_t(tr)
    assert np.allclose(twice.t, neg.t) and np.allclose(twice.q, neg.q)
    assert np.allclose(twice.p, neg.p)


def test_swap_image_integrates_along_imaginary_path():
    th = Theta(0.3, 0.8)
    tr = integrate_flow(PState(0.5 + 0.1j, 0.1, 1.0, th), linear_path(1, 1.4, 8))
    img = bt_swap(tr)
    ref = integrate_flow(img.state(0), list(img.t))
    assert np.abs(ref.q - img.q).max() < 1e-8


def test_parameter_maps():
    th = Theta(0.3, 0.8)
    for k in (BTKind.FlipTheta0, BTKind.FlipTheta1, BTKind.NegateT):
        assert compose_theta([k, k], th) == th
    assert compose_theta([BTKind.Swap, BTKind.Swap], th) == th
    a = compose_theta([BTKind.FlipTheta0, BTKind.Shift], th)
    b = compose_theta([BTKind.Shift, BTKind.FlipTheta0], th)
    assert a == Theta(-0.3 + 1, 0.8) and b == Theta(-1.3, 0.8) and a != b


# -- shift ---------------------------------------------------------------

def test_printed_formula_worked_value():
    assert printed_shift_q(2, 0.5, 1, TH11) == 21 / 16


def test_shift_worked_value():
    # the printed formula plus the missing -a^2/(q^2 t^2 (q-1)) = -1/16
    img = bt_shift_point(PState(2, 0.5, 1, TH11))
    assert img.q == 5 / 4 and img.theta == Theta(2, 1)


def test_shift_theta0_zero_specialisation():
    q, a, t, th1 = 1.7, 0.3, 1.2, 0.9
    th = Theta(0, th1)
    assert printed_shift_q(q, a, t, th) == pytest.approx(1 + th1 ** 2 / (4 * t * t * (q - 1)))
    assert shift_q(q, a, t, th) == pytest.approx(
        1 + th1 ** 2 / (4 * t * t * (q - 1)) - a * a / (q * q * t * t * (q - 1)))


def test_shift_depends_only_on_q_p_t():
    th = Theta(0.4, 0.9)
    one = chart_to_qp(Chart1Point(0.3, -1.7, 2.0, 1.1), th)
    two = chart_to_qp(Chart1Point(0.3, -1.7, -5.0, 1.1), th)
    assert bt_shift_point(one) == bt_shift_point(two)


def test_shift_guard_band():
    for q in (1e-9, 1 - 1e-9):
        with pytest.raises(FixedSingularity):
            bt_shift_point(PState(q, 0.1, 1, TH11))


def test_shift_flow_compatibility(traj):
    assert verify_bt(traj, BTKind.Shift) < 1e-6


def test_shift_flow_compatibility_random_theta():
    rng = np.random.default_rng(42)
    for s in bounded_solutions(rng, 2, t_end=1.5):
        tr = integrate_flow(s, linear_path(1, 1.5, 10))
        assert verify_bt(tr, BTKind.Shift) < 1e-6


def test_printed_shift_is_not_flow_compatible(traj):
    img = [PState(printed_shift_q(s.q, s.p, s.t, TH11), printed_shift_a(s.q, s.p, s.t, TH11), s.t,
                  Theta(2, 1)) for s in (traj.state(i) for i in range(len(traj)))]
    ref = integrate_flow(img[0], list(traj.t))
    assert max(abs(ref.q[i] - img[i].q) for i in range(len(img))) > 1e-2


def test_shift_corrupted_trajectory(traj):
    bad = Trajectory(traj.t, traj.q + 1e-3, traj.p, traj.theta, traj.t_path)
    assert verify_bt(bad, BTKind.Shift) > 1e-4


def test_verify_needs_five_samples():
    tr = integrate_flow(PState(0.5, 0.1, 1.0, TH11), linear_path(1, 1.1, 3))
    with pytest.raises(DegenerateInput):
        verify_bt(tr, BTKind.NegateT)


def test_shift_changes_monodromy_at_zero_by_sign():
    th = Theta(0.3, 0.6)
    s = PState(0.5, 0.1, 1.0, th)
    before = monodromy_invariants(qp_to_chart(s), th)
    img = bt_shift_point(s)
    after = monodromy_invariants(qp_to_chart(img), img.theta)
    assert abs(after.tr_m0 + before.tr_m0) < 1e-5
    assert abs(after.tr_m0 - expected_s(img.theta)[0]) < 1e-5
    assert abs(after.tr_m1 - before.tr_m1) < 1e-5


def test_shift_trajectory_metadata(traj):
    img = bt_shift(traj)
    assert img.theta == Theta(2, 1) and np.array_equal(img.t, traj.t)
