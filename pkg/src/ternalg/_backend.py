"""Kernel backend selection.

Prefers the compiled extension, falls back to the NumPy implementation when
the extension is missing (source checkout, failed build).  Set the
environment variable ``TERNALG_PURE_PYTHON=1`` to force the fallback, e.g.
for benchmarking.
"""

from __future__ import annotations

import os

if os.environ.get("TERNALG_PURE_PYTHON"):
    from . import _kernels_py as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "numpy"
