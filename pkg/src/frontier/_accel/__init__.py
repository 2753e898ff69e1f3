"""Backend selection for the hot step kernels.

The compiled Cython module is preferred; the numpy fallback is used when
the extension is missing or when FRONTIER_FORCE_PYTHON is set.  Both
backends expose direct_convolve, euler_update and flux_weighted_sum with
identical signatures.
"""

import os

from . import fallback

if os.environ.get("FRONTIER_FORCE_PYTHON"):
    _impl = fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = fallback
        BACKEND = "python"

direct_convolve = _impl.direct_convolve
euler_update = _impl.euler_update
flux_weighted_sum = _impl.flux_weighted_sum

__all__ = ["BACKEND", "direct_convolve", "euler_update", "flux_weighted_sum", "fallback"]
