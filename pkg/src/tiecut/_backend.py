"""Kernel backend selection.

The hot loops (current throughflow accumulation, percolation profile)
exist twice: a compiled extension built from ``_kernels.pyx`` and the
numpy/pure-Python fallback in ``_kernels_py``.  The compiled version is
preferred when importable; set ``TIECUT_PURE_PYTHON=1`` to force the
fallback (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("TIECUT_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

throughflow_accumulate = _impl.throughflow_accumulate
percolation_profile = _impl.percolation_profile

__all__ = ["BACKEND", "throughflow_accumulate", "percolation_profile"]
