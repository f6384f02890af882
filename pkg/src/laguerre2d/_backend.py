"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
numpy implementation in ``_pykernels`` takes over. Setting the environment
variable ``LAGUERRE2D_PURE_PYTHON=1`` forces the fallback.
"""

import os

from laguerre2d import _pykernels

if os.environ.get("LAGUERRE2D_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from laguerre2d import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
