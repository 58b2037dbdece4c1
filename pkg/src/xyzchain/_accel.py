"""Backend selection for the hot kernels.

Set ``XYZCHAIN_DISABLE_NUMBA=1`` to force the pure-numpy path (also used
automatically when numba cannot be imported).
"""
import os

_DISABLED = os.environ.get("XYZCHAIN_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag in CI
    _njit = None
    HAS_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAS_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"
