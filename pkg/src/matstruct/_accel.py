"""numba switch.

Set ``MATSTRUCT_DISABLE_NUMBA=1`` before import to run every kernel on its
pure-numpy / pure-Python twin.  ``njit`` degrades to an identity decorator
when numba is missing or disabled.
"""

import os

_DISABLED = os.environ.get("MATSTRUCT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("disabled by MATSTRUCT_DISABLE_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    if HAVE_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def decorator(func):
        return func

    return decorator
