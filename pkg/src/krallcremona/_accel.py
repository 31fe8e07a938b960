"""Selection between numba-compiled kernels and their pure numpy fallbacks.

Set KRALLCREMONA_NO_NUMBA=1 to force the numpy path (numba missing has the
same effect).
"""
from __future__ import annotations

import os

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

ENV_FLAG = "KRALLCREMONA_NO_NUMBA"


def numba_enabled() -> bool:
    return numba is not None and os.environ.get(ENV_FLAG, "") in ("", "0")


def njit(fn):
    """numba.njit(cache=True) when numba is importable, else identity."""
    if numba is None:  # pragma: no cover
        return fn
    return numba.njit(cache=True)(fn)
