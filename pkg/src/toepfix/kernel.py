"""Banded Toeplitz kernel: coefficient band, moments, convexity probe.

A kernel holds the nonzero band (t_{-n}, ..., t_{L-1-n}) of an infinite
Toeplitz matrix T with n subdiagonals, stored as ``coeffs[m] = t_{m-n}``.
The deepest subdiagonal entry ``coeffs[0]`` must be strictly positive and
every entry nonnegative; those two facts drive everything downstream.

``tail_mass_bound`` is an optional upper bound on coefficient mass that was
truncated away when the band was produced; the classifier uses it to refuse
to call mass-vs-1 comparisons it cannot actually decide.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import values
from .errors import (
    EmptyCoefficients,
    NegativeCoefficient,
    OutOfDomain,
    WrongBandDepth,
    ZeroLeadingCoefficient,
)

CONVEXITY_PASS = "PASS"
CONVEXITY_FAIL = "FAIL"
CONVEXITY_INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class ToeplitzKernel:
    band_depth: int
    coeffs: tuple
    tail_mass_bound: object = 0
    value_kind: str = values.EXACT

    def __len__(self):
        return len(self.coeffs)

    @property
    def exact(self):
        return self.value_kind == values.EXACT


def make_kernel(band_depth, coeffs, tail_mass_bound=0, kind=None):
    """Validate and build a kernel.

    coeffs may hold ints, Fractions, floats, or 'p/q' strings; the value
    kind is inferred unless forced via ``kind``. Mixing exact and float
    entries is an error rather than a silent promotion.
    """
    if not isinstance(band_depth, int) or band_depth < 1:
        raise WrongBandDepth("band depth must be an integer >= 1")
    coeffs = tuple(coeffs)
    if not coeffs:
        raise EmptyCoefficients("kernel needs at least one coefficient")
    vals, inferred = values.parse_values(coeffs, what="coefficients")
    if kind is not None:
        if kind != inferred and inferred == values.FLOAT:
            raise values.MixedValueKinds(
                "float coefficients cannot be promoted to exact mode"
            )
        if kind == values.FLOAT:
            vals = tuple(float(v) for v in vals)
        inferred = kind
    for v in vals:
        if isinstance(v, float) and not math.isfinite(v):
            raise OutOfDomain("coefficients must be finite")
        if v < 0:
            raise NegativeCoefficient("coefficients must be nonnegative")
    if vals[0] == 0:
        raise ZeroLeadingCoefficient(
            "deepest subdiagonal coefficient t_{-n} must be positive"
        )
    tail, _ = values.parse_scalar(tail_mass_bound)
    tail = values.coerce(tail, inferred) if tail else values.coerce(0, inferred)
    if isinstance(tail, float) and not math.isfinite(tail):
        raise OutOfDomain("tail mass bound must be finite")
    if tail < 0:
        raise OutOfDomain("tail mass bound must be nonnegative")
    return ToeplitzKernel(band_depth, vals, tail, inferred)


def mass(kernel):
    """Total coefficient mass, sum of the stored band."""
    if kernel.exact:
        return sum(kernel.coeffs, Fraction(0))
    return math.fsum(kernel.coeffs)


def first_moment(kernel):
    """First moment of the band, sum of m * coeffs[m].

    Compared against the band depth n, this decides how fast critical
    solutions grow: below n they stay bounded, at n they grow linearly.
    """
    if kernel.exact:
        return sum((m * c for m, c in enumerate(kernel.coeffs)), Fraction(0))
    return math.fsum(m * c for m, c in enumerate(kernel.coeffs))


def tau_eval(kernel, z):
    """Evaluate tau(z) = sum coeffs[m] z^m for z in [0, 1] (Horner).

    Exact in Fraction arithmetic when both the kernel and z are exact.
    """
    zv, zkind = values.parse_scalar(z)
    if zv < 0 or zv > 1:
        raise OutOfDomain("tau is evaluated on [0, 1] only")
    if kernel.exact and zkind != values.FLOAT:
        zv = Fraction(zv)
        acc = Fraction(0)
    else:
        zv = float(zv)
        acc = 0.0
    for c in reversed(kernel.coeffs):
        acc = acc * zv + c
    return acc


@dataclass(frozen=True)
class ConvexityReport:
    verdict: str
    grid_points: int
    min_second_difference: object  # None when decided analytically


def check_convexity(kernel, grid_points=1001, tol=1e-9):
    """Probe convexity of tau(z)^(1/n) on [0, 1].

    For n = 1 the answer is analytic: a polynomial with nonnegative
    coefficients is convex on [0, 1], so the check passes outright.
    For deeper bands we fall back to central second differences on a
    uniform grid. A clearly negative one fails the check; an all-flat
    profile (everything within tol of zero) is reported INDETERMINATE.
    """
    if grid_points < 3:
        raise OutOfDomain("need at least 3 grid points")
    if kernel.band_depth == 1:
        return ConvexityReport(CONVEXITY_PASS, 0, None)
    n = kernel.band_depth
    cs = [float(c) for c in kernel.coeffs]
    h = 1.0 / (grid_points - 1)
    f = []
    for i in range(grid_points):
        z = i * h
        acc = 0.0
        for c in reversed(cs):
            acc = acc * z + c
        f.append(acc ** (1.0 / n))
    d2min = min(f[i + 1] - 2.0 * f[i] + f[i - 1] for i in range(1, grid_points - 1))
    d2max = max(f[i + 1] - 2.0 * f[i] + f[i - 1] for i in range(1, grid_points - 1))
    if d2min < -tol:
        verdict = CONVEXITY_FAIL
    elif d2max <= tol:
        verdict = CONVEXITY_INDETERMINATE
    else:
        verdict = CONVEXITY_PASS
    return ConvexityReport(verdict, grid_points, d2min)


def kernel_to_json(kernel):
    return {
        "n": kernel.band_depth,
        "coeffs": [values.format_value(c) for c in kernel.coeffs],
        "tail_mass_bound": values.format_value(kernel.tail_mass_bound),
    }


def kernel_from_json(obj):
    """Build a kernel from its JSON object form.

    Expected shape: {"n": int, "coeffs": [...], "tail_mass_bound": optional}.
    Strings and ints parse exactly; floats select float mode.
    """
    if not isinstance(obj, dict):
        raise OutOfDomain("kernel JSON must be an object")
    try:
        n = obj["n"]
        coeffs = obj["coeffs"]
    except KeyError as exc:
        raise OutOfDomain(f"kernel JSON is missing key {exc}") from exc
    if not isinstance(coeffs, (list, tuple)):
        raise OutOfDomain("kernel coeffs must be a list")
    return make_kernel(n, coeffs, obj.get("tail_mass_bound", 0))
