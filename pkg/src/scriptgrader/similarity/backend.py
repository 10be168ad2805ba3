"""Kernel backend selection.

The compiled extension is preferred when available; set
``SCRIPTGRADER_KERNELS=python`` to force the numpy fallback (useful for
the backend-parity tests and the benchmark).
"""
from __future__ import annotations

import os

from . import kernels_numpy

_forced = os.environ.get("SCRIPTGRADER_KERNELS", "").lower()

if _forced == "python":
    kernels = kernels_numpy
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise
        kernels = kernels_numpy
        BACKEND = "python"
