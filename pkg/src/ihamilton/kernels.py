"""Select the compiled search kernels when available, else the pure-Python ones.

Set ``IHAMILTON_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
ham_search = _pykernels.ham_search
euler_search = _pykernels.euler_search

if os.environ.get("IHAMILTON_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        ham_search = _ckernels.ham_search
        euler_search = _ckernels.euler_search
