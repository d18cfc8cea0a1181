"""Hot loops: partition scanning and batched objective evaluation.

Two interchangeable implementations exist. The compiled Cython module
``_core`` is used when it was built; otherwise the numpy module
``_fallback`` is imported. Set ``EDTRADEOFF_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _fallback

try:
    if os.environ.get("EDTRADEOFF_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by environment")
    from . import _core as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _fallback
    BACKEND = "python"


def get_backend(name=None):
    """Return the kernel module for ``"cython"``, ``"python"`` or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _fallback
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")


partition_scan = _impl.partition_scan
sorted_err_dis = _impl.sorted_err_dis
qubit_err_dis = _impl.qubit_err_dis
s1_qubit_grid = _impl.s1_qubit_grid

__all__ = ["BACKEND", "get_backend", "partition_scan", "sorted_err_dis",
           "qubit_err_dis", "s1_qubit_grid"]
