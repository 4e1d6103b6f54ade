"""Pure-Python/numpy implementation of the dense geometric-series kernels.

Arrays are always three-dimensional; lower-arity callers pad with unit axes.
The functions work on any integer-like dtype, including ``object`` arrays of
Python ints, which is what the package uses when exactness beyond 64 bits
is required.
"""

import numpy as np


def _shifted_slices(size, step):
    """Destination/source slices so that ``dst[x] += src[x - step]`` on one axis."""
    if step >= 0:
        return slice(step, size), slice(0, size - step)
    return slice(0, size + step), slice(-step, size)


def geometric_inplace(arr, step):
    """Multiply the dense series in ``arr`` by ``1/(1 - x**step)`` in place.

    Performs ``arr[x] += arr[x - step]`` for every cell whose predecessor lies
    inside the array, visiting predecessors first.  ``step`` must be nonzero.
    """
    step = tuple(int(s) for s in step)
    axis = next((a for a, s in enumerate(step) if s != 0), None)
    if axis is None:
        raise ValueError("geometric step must be nonzero")
    n = arr.shape[axis]
    sa = step[axis]
    other = [(a, _shifted_slices(arr.shape[a], step[a])) for a in range(3) if a != axis]
    if any(sl[0].start >= sl[0].stop for _, sl in other):
        return arr
    dst_idx = [slice(None)] * 3
    src_idx = [slice(None)] * 3
    for a, (d, s) in other:
        dst_idx[a] = d
        src_idx[a] = s
    # hyperplanes orthogonal to `axis` have no internal dependencies
    order = range(sa, n) if sa > 0 else range(n + sa - 1, -1, -1)
    for i in order:
        dst_idx[axis] = i
        src_idx[axis] = i - sa
        arr[tuple(dst_idx)] += arr[tuple(src_idx)]
    return arr

