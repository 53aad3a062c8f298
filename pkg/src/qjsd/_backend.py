"""Kernel backend selection.

Hot loops are compiled with numba when it is importable. Setting
``QJSD_DISABLE_NUMBA=1`` in the environment before import routes every
kernel through its pure-numpy implementation instead.
"""
import os

_DISABLED = os.environ.get("QJSD_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, identity decorator otherwise.

    The compiled kernels are always built when numba exists so that the
    benchmark and the cross-backend tests can reach them even when the
    dispatch layer has been switched to numpy.
    """
    if _numba is None:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return _numba.njit(*args, **kwargs)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
