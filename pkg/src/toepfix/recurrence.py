"""Forward solver for x = Tx and positivity analysis of the result.

Row k of the infinite system reads x_k = sum_m coeffs[m] x_{k+n-m}
(terms with negative column index dropped), so each row determines the
next unknown:

    x_{k+n} = (x_k - sum_{m>=1} coeffs[m] x_{k+n-m}) / coeffs[0]

The n prefix values x_0..x_{n-1} are free; everything after them is
forced. Float mode delegates the loop to a backend. Exact mode avoids
per-step Fraction reduction entirely: with q the lcm of coefficient
denominators, c_m = q t_{m-n} and M = q c_0, the substitution
x_k = a_k / (M^k R) turns the recurrence into pure integer arithmetic

    a_{k+n} = u a_k - sum_{m>=1} v_m a_{k+n-m},
    u = q^{n+1} c_0^{n-1},  v_m = c_m q^m c_0^{m-1},

where R clears the prefix denominators. Signs of x_k can be read off
the integers a_k, so positivity of a long run costs no gcd at all;
Fractions are only built where values are actually reported.
"""

import csv
import math
import sys
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import values
from .errors import (
    ArithmeticOverflow,
    MixedValueKinds,
    ModeMismatch,
    NonpositiveSeed,
    NotCritical,
    OutOfDomain,
    ScaleNotAboveOne,
)
from .kernel import ToeplitzKernel, make_kernel, mass

DEFAULT_BIT_LIMIT = 65536
FLOAT_LEADING_WARNING = (
    "leading coefficient below 0.1: float forward recurrence divides by it "
    "every step and may lose precision; prefer exact mode"
)


@dataclass(frozen=True)
class Prefix:
    values: tuple
    value_kind: str

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class SolutionTrace:
    values: tuple
    mode: str
    kernel: object = None
    warnings: tuple = ()

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class TailSummary:
    """Materialized tail of a long run plus a full-run sign scan."""

    start_index: int
    values: tuple
    first_nonpositive_index: object
    mode: str


@dataclass(frozen=True)
class PositivityReport:
    all_positive: bool
    first_nonpositive_index: object
    monotone_nondecreasing_from: object
    running_max_indices: tuple


def make_prefix(kernel, vals):
    vals = tuple(vals)
    if len(vals) != kernel.band_depth:
        raise OutOfDomain(
            f"prefix needs exactly {kernel.band_depth} values, got {len(vals)}"
        )
    parsed, kind = values.parse_values(vals, what="prefix values")
    if kernel.exact and kind == values.FLOAT:
        raise ModeMismatch("float prefix with an exact-rational kernel")
    if not kernel.exact:
        parsed, kind = tuple(float(v) for v in parsed), values.FLOAT
    for v in parsed:
        if v <= 0:
            raise NonpositiveSeed("prefix values must be positive")
        if isinstance(v, float) and not math.isfinite(v):
            raise OutOfDomain("prefix values must be finite")
    return Prefix(parsed, kind)


def uniform_prefix(kernel, x0):
    """Constant prefix x_0 = ... = x_{n-1} = x0."""
    return make_prefix(kernel, (x0,) * kernel.band_depth)


def _scaled_int_setup(kernel, prefix):
    n = kernel.band_depth
    cs = [Fraction(c) for c in kernel.coeffs]
    q = math.lcm(*(c.denominator for c in cs))
    c = [int(ci * q) for ci in cs]
    M = q * c[0]
    R = math.lcm(*(Fraction(v).denominator for v in prefix.values))
    a = []
    for i, v in enumerate(prefix.values):
        num = Fraction(v) * R * M**i
        a.append(num.numerator)  # denominator is 1 by choice of R
    u = q ** (n + 1) * c[0] ** (n - 1)
    v = [c[m] * q**m * c[0] ** (m - 1) for m in range(1, len(c))]
    return a, u, v, M, R


def _exact_stream(kernel, prefix, K, bit_limit, keep):
    """Run the integer recurrence to index K.

    Returns (kept values a_{K-keep+1}..a_K, first nonpositive index or
    None). `keep` also covers the prefix when K is small.
    """
    n = kernel.band_depth
    L = len(kernel.coeffs)
    a0, u, v, M, R = _scaled_int_setup(kernel, prefix)
    maxlag = max(n, L - 1)
    buf = [0] * (maxlag + 1)
    kept = deque(maxlen=keep)
    first_nonpos = None
    for i, ai in enumerate(a0):
        buf[i % (maxlag + 1)] = ai
        kept.append(ai)
        if first_nonpos is None and ai <= 0:
            first_nonpos = i
    for k in range(K - n + 1):
        s = u * buf[k % (maxlag + 1)]
        for m in range(1, L):
            idx = k + n - m
            if idx >= 0:
                s -= v[m - 1] * buf[idx % (maxlag + 1)]
        if bit_limit is not None and s.bit_length() > bit_limit:
            raise ArithmeticOverflow(
                f"scaled numerator exceeds {bit_limit} bits at index {k + n}; "
                "raise bit_limit to continue"
            )
        buf[(k + n) % (maxlag + 1)] = s
        kept.append(s)
        if first_nonpos is None and s <= 0:
            first_nonpos = k + n
    return list(kept), first_nonpos, M, R


def solve_forward(kernel, prefix, K, bit_limit=DEFAULT_BIT_LIMIT):
    """Solve to index K and materialize the whole trace.

    Exact mode reduces each value once at the end; that reduction is the
    dominant cost for long runs (use solve_tail when only the far end
    matters). bit_limit caps the internal scaled integers (an upper
    bound on the reduced numerator/denominator sizes); None disables it.
    """
    if not isinstance(prefix, Prefix):
        prefix = make_prefix(kernel, prefix)
    _check_modes(kernel, prefix)
    n = kernel.band_depth
    if K < n:
        raise OutOfDomain(f"K must be at least the band depth {n}")
    if not kernel.exact:
        from . import backends

        arr = backends.get_backend().recurrence_float(
            kernel.coeffs, prefix.values, n, K
        )
        warns = ()
        if kernel.coeffs[0] < 0.1:
            warns = (FLOAT_LEADING_WARNING,)
        return SolutionTrace(tuple(float(x) for x in arr), values.FLOAT, kernel, warns)
    a, _, M, R = _exact_stream(kernel, prefix, K, bit_limit, keep=K + 1)
    den = R
    out = []
    for ak in a:
        out.append(Fraction(ak, den))
        den *= M
    return SolutionTrace(tuple(out), values.EXACT, kernel, ())


def solve_tail(kernel, prefix, K, window=1, bit_limit=DEFAULT_BIT_LIMIT):
    """Stream to index K, returning only the last `window` values.

    The sign of every intermediate value is still inspected, so the
    summary carries the first nonpositive index over the full run. This
    is the cheap path for long exact runs: no per-step reduction.
    """
    if not isinstance(prefix, Prefix):
        prefix = make_prefix(kernel, prefix)
    _check_modes(kernel, prefix)
    n = kernel.band_depth
    if K < n:
        raise OutOfDomain(f"K must be at least the band depth {n}")
    if window < 1:
        raise OutOfDomain("window must be at least 1")
    window = min(window, K + 1)
    start = K + 1 - window
    if not kernel.exact:
        trace = solve_forward(kernel, prefix, K)
        first = None
        for i, x in enumerate(trace.values):
            if x <= 0:
                first = i
                break
        return TailSummary(start, trace.values[start:], first, values.FLOAT)
    kept, first, M, R = _exact_stream(kernel, prefix, K, bit_limit, keep=window)
    den = R * M**start
    out = []
    for ak in kept:
        out.append(Fraction(ak, den))
        den *= M
    return TailSummary(start, tuple(out), first, values.EXACT)


def _check_modes(kernel, prefix):
    if kernel.exact and prefix.value_kind == values.FLOAT:
        raise ModeMismatch("float prefix with an exact-rational kernel")
    if not kernel.exact and prefix.value_kind == values.EXACT:
        raise ModeMismatch("exact prefix with a float kernel")


def positivity_scan(trace, kernel):
    """Positivity, eventual monotonicity, and the running-max chain.

    The chain starts at the first index attaining the prefix maximum;
    each next element is the first later index whose value reaches the
    current chain value. For positive traces of kernels with unit mass,
    consecutive chain indices should be at most band_depth apart.
    """
    n = kernel.band_depth
    xs = trace.values
    if len(xs) < 2 * n:
        raise OutOfDomain("trace too short to scan (need at least 2n values)")
    first_nonpos = None
    for i, x in enumerate(xs):
        if x <= 0:
            first_nonpos = i
            break
    mono_from = len(xs) - 1
    for k in range(len(xs) - 2, -1, -1):
        if xs[k] <= xs[k + 1]:
            mono_from = k
        else:
            break
    m = 0
    best = xs[0]
    for i in range(1, n):
        if xs[i] > best:
            m, best = i, xs[i]
    chain = [m]
    for i in range(m + 1, len(xs)):
        if xs[i] >= best:
            chain.append(i)
            best = xs[i]
    return PositivityReport(
        all_positive=first_nonpos is None,
        first_nonpositive_index=first_nonpos,
        monotone_nondecreasing_from=mono_from,
        running_max_indices=tuple(chain),
    )


def scaled_kernel(kernel, c, tolerance=1e-12):
    """Scale the leading coefficient of a unit-mass kernel by c > 1.

    The result is supercritical with mass 1 + (c-1) t_{-n} and, started
    from the same prefix, keeps a positive solution decaying to zero.
    """
    m = mass(kernel)
    if kernel.exact:
        if m != 1:
            raise NotCritical(f"kernel mass is {m}, need exactly 1")
    elif abs(m - 1.0) > tolerance:
        raise NotCritical(f"kernel mass is {m!r}, need 1 within {tolerance}")
    cv, ckind = values.parse_scalar(c)
    if kernel.exact and ckind == values.FLOAT:
        raise MixedValueKinds("float scale factor with an exact kernel")
    cv = values.coerce(cv, kernel.value_kind)
    if cv <= 1:
        raise ScaleNotAboveOne("scale factor must exceed 1")
    coeffs = (cv * kernel.coeffs[0],) + kernel.coeffs[1:]
    return ToeplitzKernel(
        kernel.band_depth, coeffs, kernel.tail_mass_bound, kernel.value_kind
    )


def write_trace_csv(trace, fh):
    """CSV form: header k,x_k (float) or k,x_k_num,x_k_den (exact)."""
    w = csv.writer(fh, lineterminator="\n")
    if trace.mode == values.EXACT:
        w.writerow(["k", "x_k_num", "x_k_den"])
        for k, x in enumerate(trace.values):
            f = Fraction(x)
            values.ensure_printable(f.numerator)
            values.ensure_printable(f.denominator)
            w.writerow([k, f.numerator, f.denominator])
    else:
        w.writerow(["k", "x_k"])
        for k, x in enumerate(trace.values):
            w.writerow([k, repr(float(x))])


def _parse_big_int(s):
    if len(s) + 10 > sys.get_int_max_str_digits():
        sys.set_int_max_str_digits(len(s) + 10)
    return int(s)


def read_trace_csv(fh, kernel=None):
    r = csv.reader(fh)
    header = next(r)
    if header == ["k", "x_k_num", "x_k_den"]:
        vals = [Fraction(_parse_big_int(row[1]), _parse_big_int(row[2])) for row in r]
        return SolutionTrace(tuple(vals), values.EXACT, kernel, ())
    if header == ["k", "x_k"]:
        vals = [float(row[1]) for row in r]
        return SolutionTrace(tuple(vals), values.FLOAT, kernel, ())
    raise OutOfDomain(f"unrecognized trace CSV header: {header}")
