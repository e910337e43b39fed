"""Closed-form chi(z) against independently summed truncated series."""

import random
from fractions import Fraction

import pytest

import toepfix as tf
from helpers import (
    critical_kernel_n1,
    rational_split,
    uniform_square_kernel_n2,
)

Z_GRID = (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))


def test_chi_closed_form_examples():
    k = tf.make_kernel(1, [1.0])
    assert tf.chi_closed_form(k, [1.0], 0.5) == pytest.approx(2.0)

    k = tf.make_kernel(1, [0.6, 0.3, 0.1])
    assert tf.chi_closed_form(k, [1.0], 0.0) == pytest.approx(1.0)

    k = tf.make_kernel(1, ["1/4", "0", "3/4"])
    with pytest.raises(tf.PoleAtZ):
        tf.chi_closed_form(k, [1], Fraction(1, 3))
    kf = tf.make_kernel(1, [0.25, 0, 0.75])
    with pytest.raises(tf.PoleAtZ):
        tf.chi_closed_form(kf, [1.0], 1 / 3)


def test_chi_domain_checks():
    k = tf.make_kernel(1, [1.0])
    for z in (-0.1, 1.0, 1.5):
        with pytest.raises(tf.OutOfDomain):
            tf.chi_closed_form(k, [1.0], z)
    with pytest.raises(tf.OutOfDomain):
        tf.chi_series_check(k, [1.0], 0.5, 99)


def test_chi_at_zero_equals_first_prefix_value():
    rng = random.Random(401)
    for _ in range(6):
        k = critical_kernel_n1(rng)
        x0 = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        assert tf.chi_closed_form(k, [x0], 0) == x0
    for _ in range(3):
        k = uniform_square_kernel_n2(rng)
        pre = [Fraction(rng.randint(1, 5)), Fraction(rng.randint(1, 5))]
        assert tf.chi_closed_form(k, pre, 0) == pre[0]


def test_depth_one_closed_form_matches_direct_formula():
    rng = random.Random(402)
    for _ in range(8):
        k = critical_kernel_n1(rng)
        kf = tf.make_kernel(1, [float(c) for c in k.coeffs])
        z = rng.random() * 0.9
        direct = float(kf.coeffs[0]) / (float(tf.tau_eval(kf, z)) - z)
        via_chi = tf.chi_closed_form(kf, [1.0], z)
        assert abs(via_chi - direct) <= 1e-15 * max(1.0, abs(direct))


def test_series_check_examples():
    k = tf.make_kernel(1, [0.6, 0.3, 0.1])
    rep = tf.chi_series_check(k, [1.0], 0.5, 200)
    assert rep.consistent and rep.abs_gap < 1e-12

    k = tf.make_kernel(1, [1.0])
    rep = tf.chi_series_check(k, [1.0], 0.5, 100)
    assert rep.consistent
    assert rep.closed_form == pytest.approx(2.0)
    assert rep.truncated_series == pytest.approx(2.0 - 2.0 * 0.5**100)

    # depth-2 kernel whose trace oscillates with growing amplitude: the
    # series still converges at z = 0.3 (inside its radius) and the huge
    # second-half sup crushes the tail bound far below the fixed slack
    k = tf.make_kernel(2, [0.5, 0.2, 0.2, 0.1])
    rep = tf.chi_series_check(k, [1.0, 1.0], 0.3, 300)
    assert rep.consistent


def test_series_check_exact_mode_gap_is_true_tail():
    k = tf.make_kernel(1, ["3/5", "3/10", "1/10"])
    rep = tf.chi_series_check(k, [1], Fraction(1, 2), 120)
    assert rep.consistent
    # the exact gap IS the series tail: positive and below the geometric bound
    # inflated by the slack term
    assert 0 < rep.abs_gap <= rep.tail_bound + Fraction(1, 10**12)
    assert isinstance(rep.closed_form, Fraction)


def test_series_check_grid_over_bounded_regimes():
    rng = random.Random(403)
    kernels = [tf.make_kernel(1, ["3/5", "3/10", "1/10"]), tf.make_kernel(1, [1])]
    for _ in range(3):
        kernels.append(critical_kernel_n1(rng))
        kernels.append(uniform_square_kernel_n2(rng))
    while len(kernels) < 10:
        k = critical_kernel_n1(rng)
        if len(k.coeffs) != 3 or k.coeffs[2] == 0:
            continue
        c0, c1, c2 = k.coeffs
        c_max = (1 - c1) ** 2 / (4 * c2 * c0)
        kernels.append(tf.scaled_kernel(k, (1 + c_max) / 2))
    for k in kernels:
        pre = tf.uniform_prefix(k, 1)
        for z in Z_GRID:
            rep = tf.chi_series_check(k, pre, z, 200)
            assert rep.consistent, (k.coeffs, z)


def test_unbounded_regimes_are_refused():
    sub = tf.make_kernel(1, [0.5, 0.3])
    with pytest.raises(tf.UnboundedTailNotBoundable):
        tf.chi_series_check(sub, [1.0], 0.5, 200)
    eq = tf.make_kernel(1, ["1/2", "0", "1/2"])
    with pytest.raises(tf.UnboundedTailNotBoundable):
        tf.chi_series_check(eq, [1], Fraction(1, 2), 200)
    # heavy-moment kernel: refused before the closed form is touched, even
    # at the exact pole location where direct evaluation raises PoleAtZ
    heavy = tf.make_kernel(1, ["1/4", "0", "3/4"])
    with pytest.raises(tf.UnboundedTailNotBoundable):
        tf.chi_series_check(heavy, [1], Fraction(1, 3), 200)


def test_consistency_report_serialization():
    k = tf.make_kernel(1, ["3/5", "3/10", "1/10"])
    rep = tf.chi_series_check(k, [1], Fraction(1, 2), 120)
    obj = tf.consistency_report_to_json(rep)
    assert obj["z"] == "1/2" and obj["consistent"] is True
    assert set(obj) == {
        "z",
        "closed_form",
        "truncated_series",
        "abs_gap",
        "tail_bound",
        "consistent",
    }
    assert "/" in obj["closed_form"]
