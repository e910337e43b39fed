"""Seeded input families and exactness checkers shared across test modules.

Families are plain deterministic generators over random.Random(seed):
every test names its seed, so failures replay exactly. Denominators stay
small so exact mode is cheap.
"""

import random
from fractions import Fraction

from toepfix import make_kernel


def rational_split(rng, count, denom):
    """count nonnegative rationals with denominator denom summing to 1."""
    cuts = sorted(rng.randrange(denom + 1) for _ in range(count - 1))
    out = []
    prev = 0
    for c in cuts + [denom]:
        out.append(Fraction(c - prev, denom))
        prev = c
    return out


def critical_coeffs_n1(rng, denom=48, max_len=5, min_lead=Fraction(3, 10)):
    """Depth-1 critical coefficient lists: mass exactly 1, gamma < 1.

    The floor on the leading coefficient keeps float recurrences well
    conditioned and subdominant decay fast, so trace-based checks
    converge within a few thousand terms.
    """
    while True:
        parts = rational_split(rng, rng.randint(2, max_len), denom)
        if parts[0] < min_lead:
            continue
        gamma = sum(m * p for m, p in enumerate(parts))
        if gamma < 1:
            return parts


def critical_kernel_n1(rng, **kw):
    return make_kernel(1, critical_coeffs_n1(rng, **kw))


def critical_heavy_coeffs_n1(rng, denom=48, max_len=6):
    """Depth-1 critical lists with gamma > 1 (mass still exactly 1)."""
    while True:
        parts = rational_split(rng, rng.randint(3, max_len), denom)
        if parts[0] == 0:
            continue
        gamma = sum(m * p for m, p in enumerate(parts))
        if gamma > 1:
            return parts


def subcritical_kernel_n1(rng, denom=48):
    """mass in (0, 1), leading coefficient at least 1/2 (mild growth)."""
    while True:
        parts = rational_split(rng, rng.randint(2, 4), denom)
        scale = Fraction(rng.randint(int(denom * 0.75), denom - 1), denom)
        parts = [p * scale for p in parts]
        if parts[0] >= Fraction(1, 2):
            return make_kernel(1, parts)


def supercritical_kernel_n1(rng, denom=48):
    """mass > 1 with gamma <= 1, via scaling the lead of a critical list."""
    parts = critical_coeffs_n1(rng, denom=denom)
    c = 1 + Fraction(rng.randint(1, denom), denom)
    return make_kernel(1, [parts[0] * c] + parts[1:])


def uniform_square_kernel_n2(rng, denom=48):
    """Depth-2 critical kernels with band length exactly 3.

    With mass 1 and no truncated boundary row, the constant solution is
    exact for a uniform prefix, which makes positivity and chain checks
    meaningful for n = 2 without relying on boundedness claims.
    """
    while True:
        parts = rational_split(rng, 3, denom)
        if parts[0] > 0:
            return make_kernel(2, parts)


def row_residual(kernel, xs, k):
    """Row k of x = Tx evaluated on the trace: x_k - sum coeffs[m] x_{k+n-m}.

    Valid whenever k + n <= last index; terms whose column index would be
    negative are dropped, matching the system's missing columns.
    """
    n = kernel.band_depth
    acc = xs[k]
    for m, c in enumerate(kernel.coeffs):
        j = k + n - m
        if j < 0:
            break
        acc -= c * xs[j]
    return acc


def dist_split(rng, count, denom):
    """Random exact distribution over {0..count-1} with positive mass at 0."""
    while True:
        parts = rational_split(rng, count, denom)
        if parts[0] > 0:
            return parts
