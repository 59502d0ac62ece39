"""Selects the rectangle kernel backend at import time.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when the environment variable ``GRIDTHETA_PURE`` is set to a non-empty
value, the pure-Python ``_pykernels`` module is used.  Both expose the same
functions with identical results.
"""

import os

from . import _pykernels

if os.environ.get("GRIDTHETA_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
boundary = _impl.boundary
coboundary = _impl.coboundary
boundary_k = _impl.boundary_k
maslov = _impl.maslov
states_in_grading = _impl.states_in_grading
grading_histogram = _impl.grading_histogram

#: Largest grid number the compiled nullity engine handles (64-bit ranks).
ENGINE_MAX_N = getattr(_impl, "ENGINE_MAX_N", 0)


def compiled_engine():
    """The compiled interleaved nullity routine, or ``None``."""
    return getattr(_impl, "interleaved", None)


def available_backends():
    """All importable kernel modules, pure Python first."""
    mods = [_pykernels]
    try:
        from . import _ckernels

        mods.append(_ckernels)
    except ImportError:
        pass
    return mods
