"""Selects the compiled kernels when the extension is built, else numpy.

Set KGBENCH_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py as py_backend

if os.environ.get("KGBENCH_PURE_PYTHON", "") not in ("", "0"):
    _impl = py_backend
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = py_backend
        BACKEND = "python"

second_difference = _impl.second_difference
lffd_run = _impl.lffd_run
cubic_kick = _impl.cubic_kick
li2_potential = _impl.li2_potential

__all__ = ["BACKEND", "py_backend", "second_difference", "lffd_run", "cubic_kick", "li2_potential"]
