"""Acceptance gate: ten end-to-end checks with stated tolerances and budgets.

Each test prints one PASS/FAIL line through the terminal summary hook in
conftest.py. test_06 is expected to fail on its depth-2 Cesaro clause:
that kernel's partial sums oscillate with geometrically growing
amplitude (characteristic root -1.5307... of tau(y) - y^2), so no
linear slope exists at any horizon. The clause is asserted as stated
rather than weakened, and the failure message spells out the numbers.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import toepfix as tf
from helpers import critical_kernel_n1, dist_split, uniform_square_kernel_n2

CRIT = ("3/5", "3/10", "1/10")


def test_01_regime_trichotomy():
    t0 = time.perf_counter()
    cases = [
        (CRIT, tf.CRITICAL_BOUNDED),
        (("1/2", "0", "1/2"), tf.CRITICAL_DIVERGENT_EQUAL),
        (("6/5", "3/10", "1/10"), tf.SUPERCRITICAL),
        (("1/2", "3/10"), tf.SUBCRITICAL),
    ]
    for coeffs, want in cases:
        assert tf.classify(tf.make_kernel(1, coeffs)).regime == want
    assert time.perf_counter() - t0 < 1.0


def test_02_limit_formula():
    t0 = time.perf_counter()
    k = tf.make_kernel(1, CRIT)
    assert tf.limit_value_n1(k, 1) == Fraction(6, 5)
    tail = tf.solve_tail(k, tf.uniform_prefix(k, 1), 10**5, bit_limit=None)
    gap = abs(tail.values[-1] - Fraction(6, 5))
    assert gap <= Fraction(1, 10**6)
    assert time.perf_counter() - t0 < 30.0


def test_03_supercritical_decay():
    t0 = time.perf_counter()
    base = tf.make_kernel(1, CRIT)
    sk = tf.scaled_kernel(base, 2)
    tail = tf.solve_tail(sk, tf.uniform_prefix(sk, 1), 10**4, bit_limit=None)
    assert tail.first_nonpositive_index is None
    assert tail.values[-1] < Fraction(1, 10**6)
    assert time.perf_counter() - t0 < 10.0


def test_04_divergent_closed_forms():
    k = tf.make_kernel(1, ("1/2", "0", "1/2"))
    tr = tf.solve_forward(k, tf.uniform_prefix(k, 1), 1000)
    assert all(x == i + 1 for i, x in enumerate(tr.values))
    k = tf.make_kernel(1, ("1/2", "3/10"))
    tr = tf.solve_forward(k, tf.uniform_prefix(k, 1), 100)
    r = Fraction(7, 5)
    assert all(x == r**i for i, x in enumerate(tr.values))


def test_05_root_cases():
    rep = tf.find_root_in_unit_interval(tf.make_kernel(1, [0.25, 0, 0.75]), 1)
    assert rep.root_exists and abs(rep.root - Fraction(1, 3)) <= 1e-10
    rep = tf.find_root_in_unit_interval(tf.make_kernel(1, [0.6, 0, 0.4]), 1)
    assert not rep.root_exists
    rep = tf.find_root_in_unit_interval(tf.make_kernel(1, [0.6, 0, 0.4]), 1.2)
    assert not rep.root_exists
    rep = tf.find_root_in_unit_interval(tf.make_kernel(1, [1.0]), 0.5)
    assert rep.root_exists and abs(rep.root - 0.5) <= 1e-10


def test_06_tauberian_slopes():
    # EXPECTED FAILURE on the depth-2 Cesaro clause: that trace's partial
    # sums S_N pick up an oscillating mode with |root| > 1, so S_N/N has no
    # limit and the stated 1% agreement is unattainable at any K. Asserted
    # as stated; the Abel clause of the same kernel does hold.
    t0 = time.perf_counter()
    cases = [
        (tf.make_kernel(1, [0.6, 0.3, 0.1]), [1.0]),
        (tf.make_kernel(2, [0.5, 0.2, 0.2, 0.1]), [1.0, 1.0]),
    ]
    for kernel, prefix in cases:
        pred = float(tf.predicted_slope(kernel, prefix))
        abel = tf.abel_limit(kernel, prefix)
        assert abs(abel - pred) <= 1e-4, (
            f"Abel clause failed for {kernel.coeffs}: {abel} vs {pred}"
        )
        tr = tf.solve_forward(kernel, tf.make_prefix(kernel, prefix), 10**5)
        ces = tf.cesaro_slope(tr)
        rel = abs(ces.slope - pred) / pred
        assert rel <= 0.01, (
            f"Cesaro clause failed for {kernel.coeffs}: slope {ces.slope!r} "
            f"vs predicted {pred} (relative error {rel!r})"
        )
    assert time.perf_counter() - t0 < 60.0


def test_07_generating_function_grid():
    rng = random.Random(777)
    family = [
        tf.make_kernel(1, [0.6, 0.3, 0.1]),
        tf.make_kernel(1, CRIT),
        tf.make_kernel(1, [1]),
        tf.make_kernel(1, [1.2, 0.3, 0.1]),
        tf.make_kernel(1, ("6/5", "3/10", "1/10")),
    ]
    for _ in range(4):
        family.append(critical_kernel_n1(rng))
        family.append(uniform_square_kernel_n2(rng))
    built = 0
    while built < 3:
        k = critical_kernel_n1(rng)
        if len(k.coeffs) != 3 or k.coeffs[2] == 0:
            continue
        c0, c1, c2 = k.coeffs
        c_max = (1 - c1) ** 2 / (4 * c2 * c0)
        family.append(tf.scaled_kernel(k, (1 + c_max) / 2))
        built += 1
    for kernel in family:
        assert tf.classify(kernel).regime in tf.BOUNDED_REGIMES
        pre = tf.uniform_prefix(kernel, 1)
        for z in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)):
            zv = float(z) if kernel.value_kind == "float" else z
            rep = tf.chi_series_check(kernel, pre, zv, 200)
            assert rep.consistent, (kernel.coeffs, z)


def test_08_probabilistic_oracle():
    nu = tf.make_dist(("7/10", "0", "3/10"))
    xs = tf.takacs_dp(nu, 3)
    assert xs == [Fraction(2, 5), Fraction(4, 7), Fraction(40, 49), Fraction(316, 343)]
    tf.set_worker_count(4)
    # warm the jit path so the budget measures simulation, not compilation
    tf.simulate_sup_single(nu, 0, horizon=100, reps=1000, seed=1)
    t0 = time.perf_counter()
    for k in range(4):
        est = tf.simulate_sup_single(nu, k, horizon=10**4, reps=10**6, seed=1)
        assert abs(est.value - float(xs[k])) <= 3 * est.std_error, (
            f"k={k}: {est.value} vs {float(xs[k])} +- {est.std_error}"
        )
    assert time.perf_counter() - t0 < 60.0


def test_09_two_sequence_bridge():
    # mu identically 1 at depth 1: the step distribution is nu itself and
    # the two-sequence values are the single-sequence ones shifted by one
    nu = tf.make_dist(("7/10", "0", "3/10"))
    assert tf.two_seq_dp(nu, tf.make_dist([0, 1]), 1, 30) == tf.takacs_dp(nu, 31)
    rng = random.Random(888)
    done = 0
    while done < 4:
        probs = dist_split(rng, rng.randint(2, 4), 12)
        d = tf.make_dist(probs)
        if d.mean >= 1:
            continue
        assert tf.two_seq_dp(d, tf.make_dist([0, 1]), 1, 25) == tf.takacs_dp(d, 26)
        done += 1

    # equal sequences: zero drift, the supremum is a.s. infinite, DP gives
    # exact zeros and the long-horizon Monte Carlo must sit within 3 sigma
    half = [0.5, 0.5]
    s = tf.two_seq_dp(half, half, 1, 5)
    assert s == [0.0] * 7
    uncond, cond = tf.simulate_sup_two(
        half, half, 1, 0, horizon=10**6, reps=10**3, seed=1
    )
    assert abs(uncond.value - 0.0) <= 3 * uncond.std_error + 1e-12
    assert abs(cond.value - 0.0) <= 3 * cond.std_error + 1e-12

    # every valid pair bridges to a unit-mass kernel in the bounded regime
    built = 0
    while built < 6:
        n = rng.randint(1, 3)
        nu_p = dist_split(rng, rng.randint(2, 4), 16)
        mu_p = dist_split(rng, n + 1, 16)
        if mu_p[-1] == 0:
            continue
        dn, dm = tf.make_dist(nu_p), tf.make_dist(mu_p)
        if dn.mean >= dm.mean:
            continue
        assert tf.classify(tf.step_kernel(dn, dm, n)).regime == tf.CRITICAL_BOUNDED
        built += 1


def test_10_simulate_determinism():
    base = [
        sys.executable, "-m", "toepfix.cli", "simulate",
        "--nu", '{"probs": ["7/10", "0", "3/10"]}',
        "--k", "2", "--reps", "20000", "--horizon", "1000",
        "--seed", "9", "--threads", "4",
    ]
    two = [
        sys.executable, "-m", "toepfix.cli", "simulate",
        "--nu", '{"probs": [0.25, 0.5, 0.25]}',
        "--mu", '{"probs": [0.0, 0.25, 0.75]}', "--n", "2",
        "--k", "1", "--reps", "20000", "--horizon", "1000",
        "--seed", "9", "--threads", "4",
    ]
    for cmd in (base, two):
        r1 = subprocess.run(cmd, capture_output=True, check=True)
        r2 = subprocess.run(cmd, capture_output=True, check=True)
        assert r1.stdout == r2.stdout
        obj = json.loads(r1.stdout)
        assert obj["schema_version"] == "1"
