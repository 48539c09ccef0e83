"""Numba switch.

Set ``HG_NUMBA=0`` to force the pure numpy/python kernels.
"""
import os

_FLAG = os.environ.get("HG_NUMBA", "1").strip().lower()

try:
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("0", "false", "no", "off")


def njit(fn):
    """Compile ``fn`` with numba when available, otherwise return it unchanged."""
    if not HAVE_NUMBA:
        return fn
    return _numba.njit(cache=True)(fn)
