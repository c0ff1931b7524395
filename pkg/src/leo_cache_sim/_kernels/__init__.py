"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module (built from ``_ncx2.pyx``) is preferred when
importable; set ``LEO_CACHE_SIM_PURE=1`` to force the pure backend.
Both backends implement the identical algorithm.
"""

import os

from leo_cache_sim._kernels import _pure

if os.environ.get("LEO_CACHE_SIM_PURE"):
    _impl = _pure
    _BACKEND = "pure"
else:
    try:
        from leo_cache_sim._kernels import _ncx2 as _impl  # type: ignore[no-redef]

        _BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        _BACKEND = "pure"

gammainc_lower = _impl.gammainc_lower
ncx2_cdf = _impl.ncx2_cdf
marcum_q1 = _impl.marcum_q1
ncx2_quantile = _impl.ncx2_quantile


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'pure'."""
    return _BACKEND
