"""Kernel backend selection.

``QMONO_BACKEND=numpy`` forces the pure-numpy kernels; anything else (or
unset) uses numba when it can be imported.
"""
import os

BACKEND_ENV = "QMONO_BACKEND"

try:
    import numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False


def _requested():
    return os.environ.get(BACKEND_ENV, "numba").strip().lower()


USE_NUMBA = HAS_NUMBA and _requested() != "numpy"
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(fn):
    """Compile ``fn`` with numba when available, otherwise return it unchanged."""
    if not HAS_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)
