"""Backend selection for the compiled kernels.

Set ``HAMMINGPERC_DISABLE_NUMBA=1`` to force the pure-numpy path. The flag is
read once at import time; tests and benchmarks can still request a backend
explicitly through the ``backend=`` argument of the engine functions.
"""
import os

_FLAG = "HAMMINGPERC_DISABLE_NUMBA"

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    NUMBA_AVAILABLE = False

NUMBA_ENABLED = NUMBA_AVAILABLE and os.environ.get(_FLAG, "").lower() not in ("1", "true", "yes", "on")


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if NUMBA_AVAILABLE:
        return numba.njit(*args, **kwargs)

    def wrap(fn):
        return fn

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrap


def default_backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
