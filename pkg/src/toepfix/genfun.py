"""Closed-form generating function of the solution and series checks.

For a kernel with band depth n and prefix x_0..x_{n-1}, the solution's
generating function is rational:

    chi(z) = N(z) / (tau(z) - z^n),
    N(z)   = sum_{k=0}^{n-1} x_k z^k sum_{i=0}^{n-1-k} coeffs[i] z^i.

chi_series_check compares this against the truncated series built from
the forward solver; the two are computed by entirely independent code
paths, which is the point.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import values
from .classify import BOUNDED_REGIMES, classify
from .errors import OutOfDomain, PoleAtZ, UnboundedTailNotBoundable
from .recurrence import make_prefix, solve_forward

POLE_REL_TOL = 1e-10


@dataclass(frozen=True)
class ConsistencyReport:
    z: object
    closed_form: object
    truncated_series: object
    abs_gap: object
    tail_bound: object
    consistent: bool


def _eval_poly(coeffs, z, zero):
    acc = zero
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def chi_closed_form(kernel, prefix, z):
    """Evaluate chi(z) for z in [0, 1).

    Exact when the kernel and z are both exact; a float z selects float
    evaluation. Near-vanishing denominators raise PoleAtZ: values there
    are not meaningful at float precision.
    """
    if not hasattr(prefix, "values"):
        prefix = make_prefix(kernel, prefix)
    pvals = prefix.values
    zv, zkind = values.parse_scalar(z)
    if zv < 0 or zv >= 1:
        raise OutOfDomain("chi is evaluated on [0, 1) only")
    n = kernel.band_depth
    exact = kernel.exact and zkind != values.FLOAT
    if exact:
        zv = Fraction(zv)
        zero = Fraction(0)
        cs = kernel.coeffs
        xs = [Fraction(v) for v in pvals]
    else:
        zv = float(zv)
        zero = 0.0
        cs = tuple(float(c) for c in kernel.coeffs)
        xs = [float(v) for v in pvals]
    tau = _eval_poly(cs, zv, zero)
    den = tau - zv**n
    if exact:
        if den == 0:
            raise PoleAtZ(f"tau(z) - z^n vanishes at z = {zv}")
    elif abs(den) < POLE_REL_TOL * max(1.0, abs(tau)):
        raise PoleAtZ(f"tau(z) - z^n is within noise of zero at z = {zv!r}")
    num = zero
    for k in range(n):
        num += xs[k] * zv**k * _eval_poly(cs[: n - k], zv, zero)
    return num / den


def chi_series_check(kernel, prefix, z, K):
    """Compare chi's closed form against the truncated solution series.

    tail_bound is sup|x_k| over the second half of the trace times the
    geometric tail z^(K+1)/(1-z); that estimate only means something
    when the solution stays bounded, so unbounded regimes are refused
    rather than given a fake certificate.
    """
    if K < 100:
        raise OutOfDomain("series check needs K >= 100")
    if not hasattr(prefix, "values"):
        prefix = make_prefix(kernel, prefix)
    regime = classify(kernel).regime
    if regime not in BOUNDED_REGIMES:
        raise UnboundedTailNotBoundable(
            f"regime {regime} has no bounded tail; the geometric tail bound "
            "does not apply"
        )
    closed = chi_closed_form(kernel, prefix, z)
    zv, zkind = values.parse_scalar(z)
    exact = kernel.exact and zkind != values.FLOAT
    trace = solve_forward(kernel, prefix, K)
    xs = trace.values
    if exact:
        zv = Fraction(zv)
        series = _eval_poly(xs, zv, Fraction(0))
        sup_tail = max(abs(x) for x in xs[K // 2 + 1 :])
        tail_bound = sup_tail * zv ** (K + 1) / (1 - zv)
        gap = abs(closed - series)
        consistent = gap <= tail_bound + Fraction(1, 10**12)
    else:
        zv = float(zv)
        series = _eval_poly([float(x) for x in xs], zv, 0.0)
        sup_tail = max(abs(float(x)) for x in xs[K // 2 + 1 :])
        tail_bound = sup_tail * zv ** (K + 1) / (1.0 - zv)
        gap = abs(float(closed) - series)
        consistent = gap <= tail_bound + 1e-12
    return ConsistencyReport(
        z=zv,
        closed_form=closed,
        truncated_series=series,
        abs_gap=gap,
        tail_bound=tail_bound,
        consistent=bool(consistent),
    )


def consistency_report_to_json(report):
    fv = values.format_value
    return {
        "z": fv(report.z),
        "closed_form": fv(report.closed_form),
        "truncated_series": fv(report.truncated_series),
        "abs_gap": fv(report.abs_gap),
        "tail_bound": fv(report.tail_bound),
        "consistent": report.consistent,
    }
