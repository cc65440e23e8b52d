"""Numeric kernels: the compiled extension when built, numpy otherwise.

Set ``COXGROW_PURE_PYTHON=1`` to force the numpy implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "numpy"
grid_winding = _kernels_py.grid_winding

if os.environ.get("COXGROW_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        grid_winding = _kernels.grid_winding
        BACKEND = "compiled"

__all__ = ["BACKEND", "grid_winding"]
