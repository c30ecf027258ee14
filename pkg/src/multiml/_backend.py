"""Kernel backend selection.

Set ``MULTIML_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable. The choice is made once, at import time.
"""

from __future__ import annotations

import importlib
from types import ModuleType

from ._flags import HAS_NUMBA, NUMBA_DISABLED, USE_NUMBA  # noqa: F401

# The numba kernels call jitted double-double helpers, so they are only
# usable when numba is enabled for the whole process.
BACKENDS = ("numba", "numpy") if USE_NUMBA else ("numpy",)


def get_kernels(name: str | None = None) -> ModuleType:
    """Return the kernel module for ``name`` (``"numba"`` or ``"numpy"``).

    ``None`` selects the active backend.
    """
    if name is None:
        name = "numba" if USE_NUMBA else "numpy"
    if name == "numba":
        if not USE_NUMBA:
            raise ImportError("numba backend unavailable (not installed or MULTIML_DISABLE_NUMBA set)")
        return importlib.import_module("multiml._kernels_numba")
    if name == "numpy":
        return importlib.import_module("multiml._kernels_numpy")
    raise ValueError(f"unknown backend {name!r}")


kernels = get_kernels()
BACKEND = "numba" if USE_NUMBA else "numpy"
