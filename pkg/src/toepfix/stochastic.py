"""Random-walk oracles for the x = Tx machinery.

Two independent routes to the same numbers:

* exact dynamic programming. ``takacs_dp`` computes
  x_k = P{sup_{r>=1}(N_r - r) < k} for a walk whose increments are
  nu - 1; ``two_seq_dp`` computes s_k = P{sup(N_r - M_r) <= k} for the
  difference of two sequences, via the step distribution
  d_j = P{nu - mu + n = j}. The latter is exactly a unit-mass kernel
  with band depth n, which is the bridge between the probabilistic
  model and the Toeplitz system.

* seeded Monte Carlo over the same walks, chunked into fixed-size
  blocks with per-replication splitmix64 streams, so estimates are
  bit-reproducible for a given (seed, reps) regardless of backend or
  thread count. A replication is flagged when the walk is still within
  one maximal step of its running maximum during the final tenth of the
  horizon; the flagged fraction makes truncation bias visible.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import backends, values
from .errors import (
    BoundaryNotResolved,
    ConditioningEventTooRare,
    DriftNotNegative,
    InvalidDistribution,
    MeanAtLeastOne,
    MixedValueKinds,
    MuSupportExceedsN,
    OutOfDomain,
    ZeroLeadingStep,
    ZeroT0,
)
from .kernel import make_kernel

TWO64 = 2**64
DEFAULT_NBINS = 512
DEFAULT_CHUNK = 4096


@dataclass(frozen=True)
class DiscreteDist:
    probs: tuple
    mean: object
    value_kind: str

    @property
    def exact(self):
        return self.value_kind == values.EXACT

    def __len__(self):
        return len(self.probs)


@dataclass(frozen=True)
class WalkEstimate:
    value: float
    std_error: float
    replications: int
    horizon: int
    seed: int
    flagged_fraction: float


def make_dist(probs):
    probs = tuple(probs)
    if not probs:
        raise InvalidDistribution("distribution needs at least one probability")
    vals, kind = values.parse_values(probs, what="probabilities")
    for p in vals:
        if isinstance(p, float) and not math.isfinite(p):
            raise InvalidDistribution("probabilities must be finite")
        if p < 0:
            raise InvalidDistribution("probabilities must be nonnegative")
    if kind == values.EXACT:
        if sum(vals) != 1:
            raise InvalidDistribution(f"probabilities sum to {sum(vals)}, need 1")
        mean = sum((j * p for j, p in enumerate(vals)), Fraction(0))
    else:
        s = math.fsum(vals)
        if abs(s - 1.0) > 1e-12:
            raise InvalidDistribution(f"probabilities sum to {s!r}, need 1")
        mean = math.fsum(j * p for j, p in enumerate(vals))
    return DiscreteDist(vals, mean, kind)


def dist_from_json(obj):
    if not isinstance(obj, dict) or "probs" not in obj:
        raise InvalidDistribution('distribution JSON must be {"probs": [...]}')
    if not isinstance(obj["probs"], (list, tuple)):
        raise InvalidDistribution("probs must be a list")
    return make_dist(obj["probs"])


def dist_to_json(dist):
    return {"probs": [values.format_value(p) for p in dist.probs]}


def takacs_dp(nu, K):
    """x_k = P{sup_{r>=1}(N_r - r) < k} by the ballot-problem recurrence.

    x_0 = 1 - E nu; each row x_k = sum_{j<=k} t_j x_{k-j+1} is solved
    for its leading term. Exact when nu is exact.
    """
    if not isinstance(nu, DiscreteDist):
        nu = make_dist(nu)
    if K < 0:
        raise OutOfDomain("K must be nonnegative")
    if (nu.mean >= 1) if nu.exact else (nu.mean >= 1.0):
        raise MeanAtLeastOne(f"mean {nu.mean} must be below 1")
    t = nu.probs
    if t[0] == 0:
        raise ZeroT0("nu must put positive mass at 0")
    one = Fraction(1) if nu.exact else 1.0
    x = [one - nu.mean]
    J = len(t) - 1
    for k in range(K):
        s = x[k]
        for j in range(1, min(k, J) + 1):
            s -= t[j] * x[k - j + 1]
        x.append(s / t[0])
    return x


def takacs_gf(nu, z):
    """Generating function x_0 tau(z)/(tau(z) - z) of the takacs_dp values."""
    if not isinstance(nu, DiscreteDist):
        nu = make_dist(nu)
    zv, zkind = values.parse_scalar(z)
    if zv < 0 or zv >= 1:
        raise OutOfDomain("takacs_gf is evaluated on [0, 1) only")
    if (nu.mean >= 1) if nu.exact else (nu.mean >= 1.0):
        raise MeanAtLeastOne(f"mean {nu.mean} must be below 1")
    exact = nu.exact and zkind != values.FLOAT
    if exact:
        zv = Fraction(zv)
        tau = sum((p * zv**j for j, p in enumerate(nu.probs)), Fraction(0))
        x0 = 1 - nu.mean
    else:
        zv = float(zv)
        tau = math.fsum(float(p) * zv**j for j, p in enumerate(nu.probs))
        x0 = 1.0 - float(nu.mean)
    den = tau - zv
    if den == 0:
        raise OutOfDomain(f"tau(z) - z vanishes at z = {zv}")
    return x0 * tau / den


def step_dist(nu, mu, n):
    """Distribution of nu - mu + n (the two-sequence walk increment + n)."""
    if not isinstance(nu, DiscreteDist):
        nu = make_dist(nu)
    if not isinstance(mu, DiscreteDist):
        mu = make_dist(mu)
    if n < 1:
        raise OutOfDomain("n must be at least 1")
    if nu.value_kind != mu.value_kind:
        raise MixedValueKinds("nu and mu must use the same value kind")
    for b, p in enumerate(mu.probs):
        if b > n and p > 0:
            raise MuSupportExceedsN(
                f"mu puts mass {p} at {b}, above the band depth {n}"
            )
    zero = Fraction(0) if nu.exact else 0.0
    out = [zero] * (len(nu.probs) + n)
    for a, pa in enumerate(nu.probs):
        if pa == 0:
            continue
        for b, pb in enumerate(mu.probs[: n + 1]):
            if pb == 0:
                continue
            out[a - b + n] += pa * pb
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return make_dist(out)


def step_kernel(nu, mu, n):
    """The unit-mass kernel whose x = Tx solution the two-sequence walk obeys."""
    d = step_dist(nu, mu, n)
    if d.probs[0] == 0:
        raise ZeroLeadingStep(
            "step distribution has no mass at 0 (nu at 0 and mu at n must both "
            "be possible)"
        )
    return make_kernel(n, d.probs, 0)


def _drift_sign(nu, mu, tolerance=1e-12):
    """-1 for E nu < E mu, 0 for equal, raises when E nu > E mu."""
    dn, dm = nu.mean, mu.mean
    if nu.exact:
        if dn > dm:
            raise DriftNotNegative(f"E nu = {dn} exceeds E mu = {dm}")
        return 0 if dn == dm else -1
    if dn > dm + tolerance:
        raise DriftNotNegative(f"E nu = {dn} exceeds E mu = {dm}")
    return 0 if abs(dn - dm) <= tolerance else -1


def two_seq_dp(nu, mu, n, K):
    """s_k = P{sup_{r>=1}(N_r - M_r) <= k} for k = -n..K (length K+n+1).

    With zero drift the walk is recurrent (it cannot be degenerate when
    the step distribution has mass at 0), so every s_k is exactly 0.
    With negative drift and n = 1 the values reduce exactly to the
    single-sequence recurrence on the step distribution. For n >= 2 the
    head s_0..s_{n-1} is pinned down in float arithmetic by requiring
    the generating function N(z)/(tau_d(z) - z^n) to have no poles
    inside the closed unit disk and residue matching s_k -> 1 at z = 1;
    later values come from the partial-fraction expansion (the forward
    recurrence amplifies float noise through its growing modes, the
    expansion does not). Negative indices follow from the renewal rows
    s_k = sum_{m<=k+n} d_m s_{k+n-m}.
    """
    if not isinstance(nu, DiscreteDist):
        nu = make_dist(nu)
    if not isinstance(mu, DiscreteDist):
        mu = make_dist(mu)
    if K < 0:
        raise OutOfDomain("K must be nonnegative")
    d = step_dist(nu, mu, n)
    if d.probs[0] == 0:
        raise ZeroLeadingStep(
            "step distribution has no mass at 0; the recurrence cannot divide"
        )
    drift = _drift_sign(nu, mu)
    if drift == 0:
        zero = Fraction(0) if d.exact else 0.0
        return [zero] * (K + n + 1)
    if n == 1:
        return takacs_dp(d, K + 1)
    head, gamma, dd = _two_seq_head(d, n)
    pc = _denom_coeffs(dd, n)
    dpc = [m * c for m, c in enumerate(pc)][1:]
    roots = np.roots(pc[::-1])
    outside = [y for y in roots if abs(y) > 1 + 1e-9]
    A = _numer_at(head, dd, n, 1.0) / (n - gamma)
    body = [min(max(v, 0.0), 1.0) for v in head]
    for k in range(n, K + 1):
        v = A
        for y in outside:
            res = _numer_at(head, dd, n, complex(y)) / _eval_poly_c(dpc, complex(y))
            v += (-res * complex(y) ** (-(k + 1))).real
        # probabilities; the residual check already caught real failures
        body.append(min(max(float(v), 0.0), 1.0))
    negs = []
    for k in range(-1, -n - 1, -1):
        v = 0.0
        for m in range(0, min(k + n, len(dd) - 1) + 1):
            v += dd[m] * body[k + n - m]
        negs.append(v)
    return negs[::-1] + body[: K + 1]


def _denom_coeffs(dd, n):
    pc = list(dd) + [0.0] * max(0, n + 1 - len(dd))
    pc[n] -= 1.0
    while len(pc) > 1 and pc[-1] == 0.0:
        pc.pop()
    return pc


def _eval_poly_c(coeffs, z):
    acc = 0.0 + 0.0j if isinstance(z, complex) else 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _numer_at(head, dd, n, z):
    acc = 0.0 + 0.0j if isinstance(z, complex) else 0.0
    for k in range(n):
        acc += head[k] * z**k * _eval_poly_c(dd[: n - k], z)
    return acc


def _two_seq_head(d, n):
    """Solve for s_0..s_{n-1} from the pole and normalization conditions."""
    dd = [float(p) for p in d.probs]
    gamma = math.fsum(j * p for j, p in enumerate(dd))
    pc = _denom_coeffs(dd, n)
    roots = np.roots(pc[::-1])

    def wrow(z):
        return [z**k * _eval_poly_c(dd[: n - k], z) for k in range(n)]

    rows, rhs = [], []
    for y in roots:
        if abs(y - 1) < 1e-9 or abs(y) > 1 + 1e-9:
            continue
        wr = wrow(y)
        rows.append([c.real if isinstance(c, complex) else c for c in wr])
        rhs.append(0.0)
        if abs(y.imag) > 1e-12:
            rows.append([c.imag if isinstance(c, complex) else 0.0 for c in wr])
            rhs.append(0.0)
    rows.append(wrow(1.0))
    rhs.append(n - gamma)
    A = np.array(rows, dtype=np.float64)
    b = np.array(rhs, dtype=np.float64)
    sol, _, _, _ = np.linalg.lstsq(A, b, rcond=None)
    resid = float(np.max(np.abs(A @ sol - b)))
    if resid > 1e-8 * max(1.0, float(np.max(np.abs(b)))):
        raise BoundaryNotResolved(
            f"pole/normalization system left residual {resid:.3e}"
        )
    if np.any(sol < -1e-6) or np.any(sol > 1 + 1e-6):
        raise BoundaryNotResolved(
            f"head values {sol.tolist()} escape [0, 1]"
        )
    return [float(v) for v in sol], gamma, dd


def _thresholds(dist):
    out = []
    if dist.exact:
        cum = Fraction(0)
        for p in dist.probs:
            cum += p
            out.append(min(int(cum * TWO64), TWO64 - 1))
    else:
        cum = 0.0
        for p in dist.probs:
            cum += float(p)
            out.append(min(int(cum * 2.0**64), TWO64 - 1))
    return tuple(out)


@lru_cache(maxsize=64)
def _sup_hist_cached(thr_key, drop, horizon, reps, seed, nbins, chunk, backend_name):
    thr = np.array(thr_key, dtype=np.uint64)
    backend = backends.get_backend()
    hist, flagged = backend.sup_hist(thr, drop, horizon, reps, seed, nbins, chunk)
    return tuple(int(h) for h in hist), int(flagged)


def _run_walk(dist, drop, horizon, reps, seed, nbins, chunk):
    if not (0 <= seed < TWO64):
        raise OutOfDomain("seed must fit in 64 bits")
    backend = backends.get_backend()
    return _sup_hist_cached(
        _thresholds(dist), drop, horizon, reps, seed, nbins, chunk, backend.NAME
    )


def _estimate(hist, upto, reps, horizon, seed, flagged):
    count = sum(hist[: upto + 1]) if upto >= 0 else 0
    v = count / reps
    se = math.sqrt(v * (1.0 - v) / reps)
    return WalkEstimate(v, se, reps, horizon, seed, flagged / reps)


def simulate_sup_single(
    nu, k, horizon=10_000, reps=100_000, seed=1,
    nbins=DEFAULT_NBINS, chunk=DEFAULT_CHUNK,
):
    """Monte Carlo estimate of P{sup_{r>=1}(N_r - r) < k}.

    Deterministic for a given (seed, reps): replication r uses its own
    splitmix64 stream, and chunk merges are sums.
    """
    if not isinstance(nu, DiscreteDist):
        nu = make_dist(nu)
    if (nu.mean >= 1) if nu.exact else (nu.mean >= 1.0):
        raise MeanAtLeastOne(f"mean {nu.mean} must be below 1")
    if reps < 1000:
        raise OutOfDomain("need at least 1000 replications")
    if horizon < 100:
        raise OutOfDomain("need a horizon of at least 100 steps")
    if k + 1 > nbins - 2:
        raise OutOfDomain(f"k = {k} needs more histogram bins than {nbins}")
    hist, flagged = _run_walk(nu, 1, horizon, reps, seed, nbins, chunk)
    # bin b holds sup + 1, so sup < k collects bins up to k
    return _estimate(hist, k, reps, horizon, seed, flagged)


def simulate_sup_two(
    nu, mu, n, k, horizon=10_000, reps=100_000, seed=1,
    nbins=DEFAULT_NBINS, chunk=DEFAULT_CHUNK,
):
    """Monte Carlo pair for the two-sequence walk at level k.

    Returns (unconditional, conditional) estimates of P{sup <= k} and
    P{sup <= k | sup >= 0}. The conditional divides out the estimated
    probability c of the conditioning event; when fewer than 10
    replications hit it, ConditioningEventTooRare is raised with the
    unconditional estimate attached.
    """
    if not isinstance(nu, DiscreteDist):
        nu = make_dist(nu)
    if not isinstance(mu, DiscreteDist):
        mu = make_dist(mu)
    d = step_dist(nu, mu, n)
    _drift_sign(nu, mu)
    if reps < 1000:
        raise OutOfDomain("need at least 1000 replications")
    if horizon < 100:
        raise OutOfDomain("need a horizon of at least 100 steps")
    if k + n > nbins - 2:
        raise OutOfDomain(f"k = {k} needs more histogram bins than {nbins}")
    hist, flagged = _run_walk(d, n, horizon, reps, seed, nbins, chunk)
    # bin b holds sup + n, so sup <= k collects bins up to k + n
    uncond = _estimate(hist, k + n, reps, horizon, seed, flagged)
    below = sum(hist[:n]) / reps  # P{sup < 0} = P{sup <= -1}
    c = 1.0 - below
    if c < 10.0 / reps:
        raise ConditioningEventTooRare(
            f"conditioning event sup >= 0 was hit in about {c * reps:.0f} of "
            f"{reps} replications",
            unconditional=uncond,
        )
    cv = (uncond.value - below) / c
    cv = min(max(cv, 0.0), 1.0)
    se = math.sqrt(cv * (1.0 - cv) / (c * reps))
    cond = WalkEstimate(cv, se, reps, horizon, seed, flagged / reps)
    return uncond, cond


def walk_estimate_to_json(est):
    return {
        "value": est.value,
        "std_error": est.std_error,
        "replications": est.replications,
        "horizon": est.horizon,
        "seed": est.seed,
        "flagged_fraction": est.flagged_fraction,
    }
