"""Backend selection for the two hot kernels.

``TOEPFIX_BACKEND=numba`` forces the jit backend, ``numpy`` forces the
pure numpy/Python fallback, anything unset tries numba first. Both
backends implement the same two entry points and produce bit-identical
output (same op order, same IEEE rounding, same RNG stream):

* ``sup_hist(thr, drop, horizon, reps, seed, nbins, chunk)``
* ``recurrence_float(coeffs, prefix, n, K)``
"""

import os

_ENV = "TOEPFIX_BACKEND"


def get_backend():
    choice = os.environ.get(_ENV, "auto").strip().lower()
    if choice in ("auto", ""):
        try:
            from . import jit_backend
            return jit_backend
        except ImportError:
            from . import numpy_backend
            return numpy_backend
    if choice == "numba":
        from . import jit_backend  # ImportError here is the right diagnostic
        return jit_backend
    if choice == "numpy":
        from . import numpy_backend
        return numpy_backend
    raise RuntimeError(f"{_ENV} must be 'numba', 'numpy', or unset, got {choice!r}")


def set_worker_count(threads):
    """Request a worker count for the parallel simulation kernel.

    Clipped to what the runtime actually allows; returns the effective
    count. The numpy backend is single-threaded and always reports 1.
    Results never depend on this value (chunked merge is associative).
    """
    if threads < 1:
        threads = 1
    backend = get_backend()
    if backend.NAME != "numba":
        return 1
    import numba

    eff = min(threads, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(eff)
    return eff
