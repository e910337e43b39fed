"""Regime classification and unit-interval root analysis.

The trichotomy splits on the coefficient mass and, at unit mass, on the
first moment gamma relative to the band depth n:

    mass > 1            SUPERCRITICAL            bounded, x_k -> 0
    mass = 1, gamma < n  CRITICAL_BOUNDED         bounded
    mass = 1, gamma = n  CRITICAL_DIVERGENT_EQUAL unbounded (linear growth)
    mass = 1, gamma > n  CRITICAL_DIVERGENT_HEAVY unbounded
    mass < 1            SUBCRITICAL              unbounded

Boundedness conclusions hold under the convexity hypothesis on
tau^(1/n); when the convexity probe does not pass, the report carries
the raw quantities plus a warning and leaves the boundedness fields
unset rather than asserting a conclusion outside its hypotheses.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import values
from .errors import (
    ConvexityNotVerified,
    IndeterminateMass,
    ModeMismatch,
    MomentNotSubunit,
    NotCritical,
    OutOfDomain,
    ToleranceTooSmall,
    WrongBandDepth,
)
from .kernel import (
    CONVEXITY_PASS,
    check_convexity,
    first_moment,
    mass,
    tau_eval,
)

SUPERCRITICAL = "SUPERCRITICAL"
CRITICAL_BOUNDED = "CRITICAL_BOUNDED"
CRITICAL_DIVERGENT_EQUAL = "CRITICAL_DIVERGENT_EQUAL"
CRITICAL_DIVERGENT_HEAVY = "CRITICAL_DIVERGENT_HEAVY"
SUBCRITICAL = "SUBCRITICAL"

BOUNDED_REGIMES = (SUPERCRITICAL, CRITICAL_BOUNDED)

CONVEXITY_WARNING = (
    "convexity of tau^(1/n) not verified; regime quantities are reported "
    "but boundedness is not asserted"
)


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    mass: object
    gamma: object
    band_depth: int
    bounded: object  # True/False, or None when convexity is unverified
    limit_is_zero: object
    limit_value: object  # n = 1 critical-bounded only, scaled to x0 = 1
    convexity: object
    warnings: tuple = ()


def _mass_side(kernel, m, tolerance):
    """+1 above 1, 0 at 1, -1 below, honoring the truncation bound."""
    t = kernel.tail_mass_bound
    if kernel.exact:
        if m > 1:
            return 1
        if m + t < 1:
            return -1
        if m == 1 and t == 0:
            return 0
    else:
        if m > 1 + tolerance:
            return 1
        if m + t < 1 - tolerance:
            return -1
        if abs(m - 1) <= tolerance and t <= tolerance:
            return 0
    raise IndeterminateMass(
        f"stored mass {m} with tail bound {t} cannot be placed against 1"
    )


def _gamma_side(kernel, g, tolerance):
    n = kernel.band_depth
    if kernel.exact:
        return (g > n) - (g < n)
    if abs(g - n) <= tolerance:
        return 0
    return 1 if g > n else -1


def classify(kernel, tolerance=1e-12):
    """Classify a kernel into the five regimes.

    Raises IndeterminateMass when the declared truncation tail straddles
    the mass-1 boundary: the trichotomy is discontinuous there and
    guessing would be wrong in either direction.
    """
    m = mass(kernel)
    g = first_moment(kernel)
    side = _mass_side(kernel, m, tolerance)
    if side > 0:
        regime = SUPERCRITICAL
    elif side < 0:
        regime = SUBCRITICAL
    else:
        gs = _gamma_side(kernel, g, tolerance)
        if gs < 0:
            regime = CRITICAL_BOUNDED
        elif gs == 0:
            regime = CRITICAL_DIVERGENT_EQUAL
        else:
            regime = CRITICAL_DIVERGENT_HEAVY
    conv = check_convexity(kernel)
    warnings = ()
    if conv.verdict == CONVEXITY_PASS:
        bounded = regime in BOUNDED_REGIMES
        limit_is_zero = regime == SUPERCRITICAL
    else:
        bounded = None
        limit_is_zero = None
        warnings = (CONVEXITY_WARNING,)
    limit_value = None
    if kernel.band_depth == 1 and regime == CRITICAL_BOUNDED:
        one = Fraction(1) if kernel.exact else 1.0
        limit_value = limit_value_n1(kernel, one, tolerance)
    return RegimeReport(
        regime=regime,
        mass=m,
        gamma=g,
        band_depth=kernel.band_depth,
        bounded=bounded,
        limit_is_zero=limit_is_zero,
        limit_value=limit_value,
        convexity=conv,
        warnings=warnings,
    )


def limit_value_n1(kernel, x0=1, tolerance=1e-12):
    """Limit of the solution for a single-band critical kernel.

    lim x_k = x0 * t_{-1} / (1 - gamma), defined when the band depth is
    1, the mass is 1, and gamma < 1. Linear in x0.
    """
    if kernel.band_depth != 1:
        raise WrongBandDepth("limit formula applies to band depth 1 only")
    m = mass(kernel)
    g = first_moment(kernel)
    if kernel.exact:
        if m != 1:
            raise NotCritical(f"kernel mass is {m}, need exactly 1")
        if g >= 1:
            raise MomentNotSubunit(f"first moment {g} must be below 1")
    else:
        if abs(m - 1) > tolerance:
            raise NotCritical(f"kernel mass is {m!r}, need 1 within {tolerance}")
        if g >= 1 - tolerance:
            raise MomentNotSubunit(f"first moment {g!r} must be below 1")
    xv, xkind = values.parse_scalar(x0)
    if kernel.exact and xkind == values.FLOAT:
        raise ModeMismatch("float x0 with an exact-rational kernel")
    xv = values.coerce(xv, kernel.value_kind)
    if xv <= 0:
        raise OutOfDomain("x0 must be positive")
    return xv * kernel.coeffs[0] / (1 - g)


@dataclass(frozen=True)
class RootReport:
    root_exists: bool
    root: object
    residual: float
    bracket: tuple
    iterations: int


def find_root_in_unit_interval(kernel, w, tol=1e-10):
    """Locate the root of z^n = w tau(z) in the open interval (0, 1).

    Requires the convexity probe to pass: then g(z) = z - (w tau(z))^(1/n)
    is concave with g(0) < 0, so it crosses zero at most twice and the
    left crossing (if the maximum of g is positive) is the reported
    root. The maximum is found by ternary search, the crossing by
    bisection to width tol. The search interval is [1e-12, 1 - 1e-9];
    the right margin keeps a boundary root at z = 1 (mass-1 kernels)
    from being picked up by rounding noise.
    """
    wv = float(w)
    if wv <= 0:
        raise OutOfDomain("w must be positive")
    if tol < 1e-14:
        raise ToleranceTooSmall("bisection tolerance below 1e-14 is not resolvable")
    if tol >= 1:
        raise OutOfDomain("tol must be below 1")
    conv = check_convexity(kernel)
    if conv.verdict != CONVEXITY_PASS:
        raise ConvexityNotVerified(
            f"convexity probe returned {conv.verdict}; root analysis needs PASS"
        )
    n = kernel.band_depth
    cs = [float(c) for c in kernel.coeffs]

    def tau(z):
        acc = 0.0
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    def g(z):
        return z - (wv * tau(z)) ** (1.0 / n)

    def residual_at(z):
        return abs(z**n - wv * tau(z))

    lo, hi = 1e-12, 1.0 - 1e-9
    iters = 0
    if g(lo) >= 0:
        # root below the usual left margin (tiny w); bisect on [0, lo]
        a, b = 0.0, lo
        while b - a > tol and iters < 4000:
            mid = 0.5 * (a + b)
            iters += 1
            if g(mid) < 0:
                a = mid
            else:
                b = mid
        root = 0.5 * (a + b)
        return RootReport(True, root, residual_at(root), (a, b), iters)
    a, b = lo, hi
    for _ in range(200):
        iters += 1
        m1 = a + (b - a) / 3.0
        m2 = b - (b - a) / 3.0
        if g(m1) < g(m2):
            a = m1
        else:
            b = m2
    zmax = 0.5 * (a + b)
    if g(zmax) <= 0.0:
        return RootReport(False, None, residual_at(zmax), (lo, hi), iters)
    a, b = lo, zmax
    while b - a > tol and iters < 4000:
        mid = 0.5 * (a + b)
        iters += 1
        if g(mid) < 0:
            a = mid
        else:
            b = mid
    root = 0.5 * (a + b)
    return RootReport(True, root, residual_at(root), (a, b), iters)


def regime_report_to_json(report):
    fv = values.format_value
    conv = report.convexity
    return {
        "regime": report.regime,
        "mass": fv(report.mass),
        "gamma": fv(report.gamma),
        "band_depth": report.band_depth,
        "bounded": report.bounded,
        "limit_is_zero": report.limit_is_zero,
        "limit_value": None if report.limit_value is None else fv(report.limit_value),
        "convexity": {
            "verdict": conv.verdict,
            "grid_points": conv.grid_points,
            "min_second_difference": conv.min_second_difference,
        },
        "warnings": list(report.warnings),
    }


def root_report_to_json(report):
    return {
        "root_exists": report.root_exists,
        "root": report.root,
        "residual": report.residual,
        "bracket": list(report.bracket),
        "iterations": report.iterations,
    }


def pole_in_unit_interval(kernel, grid=4096):
    """Sign-scan tau(z) - z^n on an interior grid of (0, 1).

    Returns True when the denominator of the generating function takes a
    nonpositive value strictly inside the interval (a pole lies at or
    before the sign change). The boundary zero at z = 1 carried by every
    unit-mass kernel is not a hit.
    """
    n = kernel.band_depth
    cs = [float(c) for c in kernel.coeffs]
    for i in range(1, grid):
        z = i / grid
        acc = 0.0
        for c in reversed(cs):
            acc = acc * z + c
        if acc - z**n <= 0.0:
            return True
    return False


# re-exported so callers needing the raw quantities next to the regime
# constants do not have to import two modules
__all__ = [
    "SUPERCRITICAL",
    "CRITICAL_BOUNDED",
    "CRITICAL_DIVERGENT_EQUAL",
    "CRITICAL_DIVERGENT_HEAVY",
    "SUBCRITICAL",
    "BOUNDED_REGIMES",
    "RegimeReport",
    "RootReport",
    "classify",
    "limit_value_n1",
    "find_root_in_unit_interval",
    "pole_in_unit_interval",
    "regime_report_to_json",
    "root_report_to_json",
    "mass",
    "first_moment",
    "tau_eval",
]
