"""Fallback backend: vectorized numpy walk kernel, plain-Python recurrence.

Must stay bit-identical to the jit backend. The RNG is an explicit
splitmix64 written out in uint64 numpy ops so both backends draw the
exact same variates; replication r runs its own stream whose initial
state is the avalanche mix of ``seed + (r+1) * PHI``, so streams are
decorrelated and results are independent of chunking.
"""

import numpy as np

PHI = np.uint64(0x9E3779B97F4A7C15)
M1 = np.uint64(0xBF58476D1CE4E5B9)
M2 = np.uint64(0x94D049BB133111EB)

NAME = "numpy"


def sup_hist(thr, drop, horizon, reps, seed, nbins, chunk):
    """Histogram of (sup of the walk + drop) over replications.

    Each replication runs `horizon` steps of pos += j - drop where j is
    drawn by inverse CDF against uint64 thresholds `thr`. Returns
    (hist, flagged): hist[b] counts sups with min(best+drop, nbins-1)=b,
    flagged counts walks still within `drop` of their running max during
    the last tenth of the horizon (truncation-bias diagnostic).
    """
    err = np.geterr()
    np.seterr(over="ignore")  # uint64 wraparound is the point here
    try:
        hist = np.zeros(nbins, dtype=np.int64)
        flagged = 0
        rflag = horizon - horizon // 10
        for lo in range(0, reps, chunk):
            m = min(chunk, reps - lo)
            idx = np.arange(lo + 1, lo + m + 1, dtype=np.uint64)
            z = np.uint64(seed) + idx * PHI
            z = (z ^ (z >> np.uint64(30))) * M1
            z = (z ^ (z >> np.uint64(27))) * M2
            state = z ^ (z >> np.uint64(31))
            pos = np.zeros(m, dtype=np.int64)
            best = np.full(m, -drop - 1, dtype=np.int64)
            flag = np.zeros(m, dtype=bool)
            for r in range(1, horizon + 1):
                state = state + PHI
                z = state
                z = (z ^ (z >> np.uint64(30))) * M1
                z = (z ^ (z >> np.uint64(27))) * M2
                z = z ^ (z >> np.uint64(31))
                j = np.searchsorted(thr, z, side="right")
                np.minimum(j, len(thr) - 1, out=j)  # matches the jit loop clamp
                pos += j - drop
                np.maximum(best, pos, out=best)
                if r > rflag:
                    flag |= pos >= best - drop
            b = np.minimum(best + drop, nbins - 1)
            hist += np.bincount(b, minlength=nbins)
            flagged += int(flag.sum())
        return hist, flagged
    finally:
        np.seterr(**err)


def recurrence_float(coeffs, prefix, n, K):
    """Forward solve x_{k+n} = (x_k - sum_{m>=1} c_m x_{k+n-m}) / c_0.

    Python-float loop; identical op order to the jit version, so the
    two backends agree bit for bit.
    """
    cs = [float(c) for c in coeffs]
    L = len(cs)
    x = [0.0] * (K + 1)
    for i in range(n):
        x[i] = float(prefix[i])
    for k in range(K - n + 1):
        s = x[k]
        for m in range(1, L):
            idx = k + n - m
            if idx >= 0:
                s -= cs[m] * x[idx]
        x[k + n] = s / cs[0]
    return np.array(x, dtype=np.float64)
