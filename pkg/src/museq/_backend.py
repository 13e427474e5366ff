"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``MUSEQ_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

INT64_SAFE = 2**62

kernels = _pykernels
NAME = "python"

if not os.environ.get("MUSEQ_PURE_PYTHON"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        NAME = "cython"
    except ImportError:
        pass


def fits_int64(*magnitudes: int) -> bool:
    return all(abs(m) < INT64_SAFE for m in magnitudes)


def select(*magnitudes: int):
    """Kernels to use for a call whose intermediates stay below ``magnitudes``."""
    if kernels is not _pykernels and fits_int64(*magnitudes):
        return kernels
    return _pykernels
