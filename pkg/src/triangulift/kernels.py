"""Backend selection for the ordering-search kernels.

The compiled extension is preferred; the pure-Python module is used when
the extension was not built or when ``TRIANGULIFT_PURE`` is set to a
non-empty value other than ``0``.
"""

import os

from . import _fallback

fallback = _fallback

if os.environ.get("TRIANGULIFT_PURE", "0") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = _impl.BACKEND
peel = _impl.peel
exhaustive = _impl.exhaustive


def compiled():
    """Return the compiled module, or None if it is not importable."""
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels
