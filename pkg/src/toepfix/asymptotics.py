"""Tauberian checks: partial-sum slope vs the generating-function limit.

For a unit-mass kernel with first moment gamma < n, partial sums of the
solution grow linearly with slope

    A = N(1) / (n - gamma),  N(1) = sum_{k<n} x_k sum_{i<=n-1-k} coeffs[i],

and the same constant is the Abel limit of (1-z) chi(z) as z -> 1.
cesaro_slope estimates the slope empirically from a computed trace, so
the three quantities cross-check each other through unrelated routes.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import values
from .errors import (
    MomentNotSubunit,
    NotCritical,
    OutOfDomain,
    PoleDetected,
    TraceTooShort,
)
from .genfun import chi_closed_form
from .kernel import first_moment, mass
from .classify import pole_in_unit_interval
from .recurrence import make_prefix

DEFAULT_EPSILONS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class SlopeEstimate:
    slope: float
    N_used: int
    fit_residual: float


def _require_critical_subunit(kernel, tolerance, check_pole=False):
    m = mass(kernel)
    g = first_moment(kernel)
    n = kernel.band_depth
    if kernel.exact:
        critical = m == 1
    else:
        critical = abs(m - 1) <= tolerance
    if not critical:
        raise NotCritical(f"kernel mass is {m}, need 1")
    if check_pole and pole_in_unit_interval(kernel):
        raise PoleDetected("tau(z) - z^n has a root inside (0, 1)")
    if kernel.exact:
        subunit = g < n
    else:
        subunit = g < n - tolerance
    if not subunit:
        raise MomentNotSubunit(f"first moment {g} must be below band depth {n}")
    return g


def predicted_slope(kernel, prefix, tolerance=1e-12):
    """The closed-form slope constant A (exact in rational mode)."""
    if not hasattr(prefix, "values"):
        prefix = make_prefix(kernel, prefix)
    g = _require_critical_subunit(kernel, tolerance)
    n = kernel.band_depth
    num = 0 * g  # zero of the right kind
    for k in range(n):
        num += prefix.values[k] * sum(kernel.coeffs[: n - k])
    return num / (n - g)


def cesaro_slope(trace):
    """Least-squares slope of the partial sums over the top of the trace.

    The fit window is the larger of the top half and the last 1000
    points, which suppresses the transient without starving short
    traces. fit_residual is RMS(residual)/RMS(S) over the window; a
    clearly nonlinear S_N (quadratic growth, oscillation blow-up) shows
    up as a large residual or a nan slope rather than a quiet wrong
    answer.
    """
    xs = trace.values if hasattr(trace, "values") else trace
    if len(xs) <= 1000:
        raise TraceTooShort(f"need more than 1000 values, got {len(xs)}")
    x = np.asarray([float(v) for v in xs], dtype=np.float64)
    S = np.cumsum(x)
    win = max(len(S) // 2, min(len(S), 1000))
    Sw = S[len(S) - win :]
    Nw = np.arange(len(S) - win, len(S), dtype=np.float64)
    if not np.all(np.isfinite(Sw)):
        return SlopeEstimate(math.nan, win, math.nan)
    A = np.vstack([Nw, np.ones_like(Nw)]).T
    (slope, _), res, _, _ = np.linalg.lstsq(A, Sw, rcond=None)
    rms_s = math.sqrt(float(np.mean(Sw**2)))
    if res.size:
        rms_r = math.sqrt(float(res[0]) / win)
    else:
        rms_r = 0.0
    fit_residual = rms_r / rms_s if rms_s > 0 else math.inf
    return SlopeEstimate(float(slope), int(win), float(fit_residual))


def abel_limit(kernel, prefix, epsilons=DEFAULT_EPSILONS, tolerance=1e-12):
    """Extrapolate (1-z) chi(z) to z = 1 from z = 1 - epsilon.

    Uses the two smallest epsilons for a two-point Richardson step
    (the value is linear in epsilon to first order). Kernels whose
    denominator vanishes inside (0, 1) are rejected up front: chi is
    meaningless past the pole.
    """
    if not hasattr(prefix, "values"):
        prefix = make_prefix(kernel, prefix)
    eps = [float(e) for e in epsilons]
    if not eps:
        raise OutOfDomain("need at least one epsilon")
    if any(e <= 0 or e >= 0.5 for e in eps):
        raise OutOfDomain("epsilons must lie in (0, 0.5)")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise OutOfDomain("epsilons must be strictly decreasing")
    _require_critical_subunit(kernel, tolerance, check_pole=True)
    f = []
    for e in eps:
        z = 1.0 - e
        f.append(e * float(chi_closed_form(kernel, prefix, z)))
    if len(eps) == 1:
        return f[0]
    e1, e2 = eps[-2], eps[-1]
    f1, f2 = f[-2], f[-1]
    return (e1 * f2 - e2 * f1) / (e1 - e2)


def slope_estimate_to_json(est):
    return {
        "slope": est.slope,
        "N_used": est.N_used,
        "fit_residual": est.fit_residual,
    }
