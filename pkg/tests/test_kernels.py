import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poincare_series import _kernel_py, kernels

needs_compiled = pytest.mark.skipif(not kernels.has_compiled(), reason="compiled kernel not built")


def naive_geometric(arr, step):
    """Reference: sum over u of arr[x - u*step] using the original values."""
    src = arr.copy()
    out = np.zeros_like(arr)
    shape = arr.shape
    for x in np.ndindex(shape):
        total = 0
        u = 0
        while True:
            y = tuple(a - u * s for a, s in zip(x, step))
            if not all(0 <= v < n for v, n in zip(y, shape)):
                break
            total += src[y]
            u += 1
        out[x] = total
    return out


steps = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).filter(any)
shapes = st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))


@settings(max_examples=60, deadline=None)
@given(shapes, steps, st.integers(0, 2**31))
def test_python_kernel_matches_naive(shape, step, seed):
    arr = np.random.default_rng(seed).integers(-5, 6, size=shape).astype(object)
    expected = naive_geometric(arr, step)
    got = _kernel_py.geometric_inplace(arr.copy(), step)
    assert (got == expected).all()


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(shapes, steps, st.integers(0, 2**31))
def test_compiled_kernel_matches_python(shape, step, seed):
    base = np.random.default_rng(seed).integers(-5, 6, size=shape)
    fast = np.array(base, dtype=np.int64, order="C")
    kernels.geometric_inplace(fast, step, backend="compiled")
    slow = _kernel_py.geometric_inplace(base.astype(object), step)
    assert (fast.astype(object) == slow).all()


@needs_compiled
def test_compiled_kernel_reports_overflow():
    arr = np.zeros((70, 1, 1), dtype=np.int64)
    arr[0, 0, 0] = 2**62
    arr[1, 0, 0] = 2**62
    with pytest.raises(OverflowError):
        kernels.geometric_inplace(arr, (1, 0, 0), backend="compiled")


def test_zero_step_rejected():
    with pytest.raises(ValueError):
        _kernel_py.geometric_inplace(np.zeros((2, 2, 2), dtype=object), (0, 0, 0))


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")
