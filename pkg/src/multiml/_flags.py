"""Whether numba is importable and enabled (``MULTIML_DISABLE_NUMBA``)."""

from __future__ import annotations

import os

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAS_NUMBA = False

_FALSY = {"", "0", "false", "no", "off"}

NUMBA_DISABLED = os.environ.get("MULTIML_DISABLE_NUMBA", "").strip().lower() not in _FALSY
USE_NUMBA = HAS_NUMBA and not NUMBA_DISABLED

if USE_NUMBA:
    from numba import njit

    jit = njit(cache=True)
else:

    def jit(func):
        return func
