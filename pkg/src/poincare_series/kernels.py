"""Backend selection for the dense geometric-series kernel.

The compiled extension ``_kernel`` works on ``int64`` arrays and raises
``OverflowError`` as soon as a coefficient leaves the 64-bit range; callers
then redo the work on ``object`` arrays with the pure-Python kernel.  Set
``POINCARE_SERIES_PURE=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernel_py

try:
    if os.environ.get("POINCARE_SERIES_PURE"):
        raise ImportError("pure-Python backend forced")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def has_compiled():
    return _compiled is not None


def geometric_inplace(arr, step, backend=None):
    """Apply ``arr[x] += arr[x - step]`` over a 3-d box, predecessors first.

    With the compiled backend ``arr`` must be a C-contiguous ``int64`` array;
    ``OverflowError`` signals that exact results need ``object`` storage.
    """
    backend = backend or BACKEND
    if backend == "compiled" and arr.dtype == np.int64:
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        s0, s1, s2 = (int(s) for s in step)
        _compiled.geometric_inplace(arr, s0, s1, s2)
        return arr
    return _kernel_py.geometric_inplace(arr, step)


def working_dtype(backend=None):
    backend = backend or BACKEND
    return np.int64 if backend == "compiled" else object
