"""Pick the compiled DE kernels when available.

Set ``HDAIR_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _kernels_py

kernels = _kernels_py
BACKEND = "python"

if os.environ.get("HDAIR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        pass
