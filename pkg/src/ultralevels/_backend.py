"""Pick the compiled sieve kernels when available, else the numpy fallback.

Set ``ULTRALEVELS_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("ULTRALEVELS_PURE"):
    from . import _kernels_py as kernels

    NAME = "python"
else:
    try:
        from . import _kernels as kernels

        NAME = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as kernels

        NAME = "python"

__all__ = ["kernels", "NAME"]
