"""numba backend: jit-compiled walk simulation and float recurrence.

Same splitmix64 streams and op order as the numpy fallback; outputs
are bit-identical. Each replication draws from its own stream seeded
by mixing ``seed + (rep+1) * PHI``. The walk kernel parallelizes over
fixed-size chunks and merges per-chunk histograms by summation, so
results do not depend on the thread count.
"""

import numpy as np
from numba import njit, prange

PHI = np.uint64(0x9E3779B97F4A7C15)
M1 = np.uint64(0xBF58476D1CE4E5B9)
M2 = np.uint64(0x94D049BB133111EB)

NAME = "numba"


@njit(cache=True, parallel=True)
def _sup_hist(thr, drop, horizon, reps, seed, nbins, chunk):
    nchunks = (reps + chunk - 1) // chunk
    hist = np.zeros((nchunks, nbins), dtype=np.int64)
    flagged = np.zeros(nchunks, dtype=np.int64)
    rflag = horizon - horizon // 10
    ncat = thr.shape[0]
    for c in prange(nchunks):
        lo = c * chunk
        hi = min(lo + chunk, reps)
        for rep in range(lo, hi):
            # avalanche the stream seed so replications start at scattered
            # states; raw seed + (rep+1)*PHI would make neighboring streams
            # shifted windows of one sequence and correlate their sups
            z = np.uint64(seed) + np.uint64(rep + 1) * PHI
            z = (z ^ (z >> np.uint64(30))) * M1
            z = (z ^ (z >> np.uint64(27))) * M2
            state = z ^ (z >> np.uint64(31))
            pos = 0
            best = -drop - 1
            flag = False
            for r in range(rflag):
                state = state + PHI
                z = state
                z = (z ^ (z >> np.uint64(30))) * M1
                z = (z ^ (z >> np.uint64(27))) * M2
                z = z ^ (z >> np.uint64(31))
                j = 0
                while j < ncat - 1 and z >= thr[j]:
                    j += 1
                pos += j - drop
                if pos > best:
                    best = pos
            for r in range(horizon - rflag):
                state = state + PHI
                z = state
                z = (z ^ (z >> np.uint64(30))) * M1
                z = (z ^ (z >> np.uint64(27))) * M2
                z = z ^ (z >> np.uint64(31))
                j = 0
                while j < ncat - 1 and z >= thr[j]:
                    j += 1
                pos += j - drop
                if pos > best:
                    best = pos
                if pos >= best - drop:
                    flag = True
            b = best + drop
            if b >= nbins:
                b = nbins - 1
            hist[c, b] += 1
            if flag:
                flagged[c] += 1
    return hist, flagged


def sup_hist(thr, drop, horizon, reps, seed, nbins, chunk):
    hist, flagged = _sup_hist(
        thr, drop, horizon, reps, np.uint64(seed), nbins, chunk
    )
    return hist.sum(axis=0), int(flagged.sum())


@njit(cache=True)
def _recurrence_float(coeffs, prefix, n, K):
    L = coeffs.shape[0]
    x = np.zeros(K + 1, dtype=np.float64)
    for i in range(n):
        x[i] = prefix[i]
    for k in range(K - n + 1):
        s = x[k]
        for m in range(1, L):
            idx = k + n - m
            if idx >= 0:
                s -= coeffs[m] * x[idx]
        x[k + n] = s / coeffs[0]
    return x


def recurrence_float(coeffs, prefix, n, K):
    cs = np.asarray(coeffs, dtype=np.float64)
    pf = np.asarray(prefix, dtype=np.float64)
    return _recurrence_float(cs, pf, n, K)
