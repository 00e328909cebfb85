"""Per-step interaction kernels with a compiled core and a numpy fallback.

The compiled extension is preferred when importable; set the environment
variable ``SWARMGSP_BACKEND=python`` to force the numpy implementation.
``BACKEND`` names the implementation actually in use.
"""

import os

from . import _reference

__all__ = ["BACKEND", "couzin_desired", "swarmalator_derivs", "get_backend"]

if os.environ.get("SWARMGSP_BACKEND", "").lower() in ("python", "numpy", "reference"):
    _impl = _reference
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _reference
        BACKEND = "python"

couzin_desired = _impl.couzin_desired
swarmalator_derivs = _impl.swarmalator_derivs


def get_backend(name=None):
    """Return the kernel module for ``name`` ('compiled', 'python', or None
    for the active default). Raises ImportError if the compiled core was
    never built."""
    if name is None:
        return _impl
    if name == "python":
        return _reference
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
