"""Kernel selection: compiled ``_ckernels`` when importable, else pure Python.

Set ``STFIB_PURE_PYTHON=1`` to force the fallback at import, or call
:func:`use` at runtime (the benchmark and the parity tests do this).
Callers must look kernels up through this module (``kernels.poly_mul``), never
bind them at their own import time, so that :func:`use` takes effect.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_NAMES = ("poly_mul", "poly_exact_div", "cpow", "fib_binet", "lucas_binet",
          "fibonomial_row", "unit_series_coeffs", "horner", "partial_sums", "isfinite")

IMPLEMENTATION = "python"


def available() -> tuple:
    return ("cython", "python") if _ckernels is not None else ("python",)


def use(name: str) -> None:
    """Switch every kernel to ``"cython"`` or ``"python"``."""
    global IMPLEMENTATION
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        mod = _ckernels
    elif name == "python":
        mod = _kernels_py
    else:
        raise ValueError(f"unknown kernel implementation {name!r}")
    g = globals()
    for n in _NAMES:
        g[n] = getattr(mod, n)
    IMPLEMENTATION = name


use("python" if _ckernels is None or os.environ.get("STFIB_PURE_PYTHON") == "1" else "cython")
