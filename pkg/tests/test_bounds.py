import math

import numpy as np
import pytest

from quadsat import bounds as B
from quadsat.bounds import (
    OutOfRegion,
    bound_a,
    bound_b,
    bound_c,
    bound_d,
    bound_e,
    bound_e_constant,
    check_V,
    delta_lift,
    delta_q0,
    delta_q0_root,
    F_kq,
    known_bound,
    known_lift,
    lift_length,
    product_form_trajectory,
    s_w_min,
    solve_W,
)

mpmath = pytest.importorskip("mpmath")


def test_s_w_min_branches():
    assert s_w_min(3, 101) == 294
    assert s_w_min(20, 101) == 2550
    assert s_w_min(20, 128) == 4096
    with pytest.raises(ValueError):
        s_w_min(2, 7)


def _bound_a_reference(q):
    """Same recurrence in exact rationals, independent of the integer shortcut."""
    from fractions import Fraction

    U, w = Fraction(q**3), 3
    while True:
        c = w * (w - 1) // 2
        S = c * (q - c) if 2 * c - 1 <= q else (Fraction(q * q - 1, 4) if q % 2 else Fraction(q * q, 4))
        U -= math.ceil(S * U / (q * q + 1 - w))
        if U <= 1:
            return w + 1
        w += 1


@pytest.mark.parametrize("q", [3, 5, 7, 8, 9, 13, 101, 128, 7951])
def test_bound_a_matches_rational_reference(q):
    assert bound_a(q).n == _bound_a_reference(q)


@pytest.mark.parametrize("q", [7, 13, 101, 1009])
def test_bound_a_below_product_form(q):
    A = bound_a(q)
    prod = product_form_trajectory(q, len(A.trajectory) - 1)
    for u, p in zip(A.trajectory, prod):
        assert u <= p + 1e-6 * max(1.0, p)


def test_bound_a_trajectory_shape():
    A = bound_a(17)
    assert A.trajectory[0] == 17**3
    assert A.uncovered_at(3) == 17**3
    assert A.trajectory[-1] <= 1 < A.trajectory[-2]
    assert A.n == A.w + 1 == len(A.trajectory) + 2


def test_bound_b_monotone_normalized():
    qs = np.unique(np.geomspace(1e5 + 1, 5e6, 60).astype(int))
    vals = [bound_b(int(q)).normalized for q in qs]
    assert all(v is not None for v in vals)
    # integer rounding makes tiny upward ticks possible; the trend must fall
    assert vals[-1] < vals[0]
    assert all(b <= a + 1.5 / B.cbrt_qlnq(q) for a, b, q in zip(vals, vals[1:], qs[1:]))


def test_bound_a_not_worse_than_bound_b():
    qs = np.unique(np.geomspace(1e5 + 1, 5e6, 50).astype(int))
    assert len(qs) >= 50
    for q in qs:
        assert bound_a(int(q)).n <= bound_b(int(q)).n


def test_bound_b_side_condition():
    b = bound_b(101)
    if b.applicable:
        assert 2 * B.binom2(b.w) - 1 <= 101
    assert not b.valid


def test_delta_q0_signs():
    assert delta_q0(1e4) < 0
    assert delta_q0(10**5) > 0
    root = delta_q0_root()
    assert delta_q0(root) > 0 and delta_q0(root - 1) <= 0


def test_F_monotone():
    assert F_kq(19, 1e8) > F_kq(19, 1e7)
    ks = np.linspace(18.01, 20.339, 30)
    vals = [F_kq(k, 1e7) for k in ks]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert F_kq(20, 2374364) >= 0 > F_kq(20, 2374363)
    with pytest.raises(OutOfRegion):
        F_kq(18, 1e6)


def test_solve_W_monotone_in_k():
    ks = [20.339, 20.335, 20, 19.7, 19, 18.5, 18.1, 18.05]
    roots = [solve_W(k).ceil_w for k in ks]
    assert roots == sorted(roots)


@pytest.mark.parametrize("k", ["20.339", "20", "19", "18.5", "18.1", "18.05"])
def test_solve_W_against_high_precision(k):
    mpmath.mp.dps = 50
    kk = mpmath.mpf(float(k))  # the same binary k the float code sees

    def F(q):
        q = mpmath.mpf(q)
        L = mpmath.log(q)
        return ((kk - 18) / mpmath.mpf("0.302")) ** 3 / kk**5 - L * L / q

    r = solve_W(float(k)).ceil_w
    assert F(r) >= 0 > F(r - 1)


def test_solve_W_region():
    with pytest.raises(OutOfRegion):
        solve_W(18)
    with pytest.raises(OutOfRegion):
        solve_W(50)
    s = solve_W(20.340)
    assert s.ceil_w == 1515738 and not s.usable


def test_bound_c_region_and_values():
    assert bound_c(20.339, 1517567).normalized == pytest.approx(2.7368, abs=5e-4)
    assert bound_c(18.5, 171670620).normalized == pytest.approx(2.6461, abs=5e-4)
    with pytest.raises(OutOfRegion):
        bound_c(20.340, 2e6)
    with pytest.raises(OutOfRegion):
        bound_c(20, 2374363)
    assert abs(bound_c(20, 1e18).normalized - 20 ** (1 / 3)) < 1e-4


def test_bound_d():
    assert bound_d(1e12, 0.1).normalized == pytest.approx(18.1 ** (1 / 3), abs=1e-3)
    assert bound_d(1e40, 1e-9).normalized == pytest.approx(B.CBRT18, abs=1e-4)
    for q in [1e7, 1e10]:
        assert bound_d(q, 0.01).value > bound_c(18.005, q, check_region=False).value
    with pytest.raises(OutOfRegion):
        bound_d(1e7, 0)


def test_check_V():
    assert not check_V(10**5, 1e-3)
    qs = np.geomspace(1e4, 1e9, 200)
    flags = [check_V(q, 1e-3) for q in qs]
    first = flags.index(True)
    assert all(flags[first:])


def test_bound_e_constants():
    assert bound_e(101).value == pytest.approx(20.23, abs=0.01)
    assert bound_e_constant(7949) == 2.69
    assert bound_e_constant(4373) == 2.61
    assert bound_e_constant(4374) == 2.65
    assert bound_e_constant(13) == 2.61
    with pytest.raises(OutOfRegion):
        bound_e(12)
    with pytest.raises(OutOfRegion):
        bound_e(7950)


def test_known_bound():
    assert known_bound(14983).normalized == pytest.approx(6.80, abs=0.02)
    assert known_bound(10**5).normalized == pytest.approx(5.75, abs=0.02)
    assert known_bound(1517567).normalized == pytest.approx(5.2500, abs=5e-4)
    assert abs(known_bound(1e14).normalized - 4.953) < 0.005
    with pytest.raises(OutOfRegion):
        known_bound(14982)


def test_delta_lift():
    for q in [2, 3, 7, 101]:
        assert delta_lift(4, q) == 0
        assert delta_lift(7, q) == 3
    assert delta_lift(13, 3) == 34
    assert delta_lift(10, 5) == 3 * 5 + 2
    with pytest.raises(ValueError):
        delta_lift(6, 3)


def test_lift_length():
    assert lift_length(20, 7, 23) == 463
    assert lift_length(17, 4, 19) == 17
    with pytest.raises(OutOfRegion):
        lift_length(23, 7, 23)


def test_known_lift():
    q = 14983
    assert known_lift(7, q) == pytest.approx(known_bound(q).value * q + 3 * (q + 1))
    assert known_lift(4, q) == pytest.approx(known_bound(q).value + 3)
    for r in (7, 10):
        n = known_lift(r, 1e14) / B.lift_normalizer(r, 1e14)
        assert abs(n - B.KNOWN_LIMIT) < 0.01


def test_integer_results_are_python_ints():
    A = bound_a(10**6)
    assert type(A.n) is int and all(type(u) is int for u in A.trajectory)
    assert type(lift_length(5, 16, 7)) is int
    assert lift_length(5, 16, 7) == 5 * 7**4 + 3 * 7**3 + 2 * 7**2
