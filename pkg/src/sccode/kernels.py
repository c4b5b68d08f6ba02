"""Backend selection for the counting kernels.

The compiled extension is used when it imports; set ``SCCODE_PURE_PYTHON=1``
to force the NumPy fallback.
"""

import os

if os.environ.get("SCCODE_PURE_PYTHON"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

signed_sums = _impl.signed_sums
walk_profile = _impl.walk_profile
value_hits = _impl.value_hits
modular_hits = _impl.modular_hits

__all__ = ["BACKEND", "signed_sums", "walk_profile", "value_hits", "modular_hits"]
