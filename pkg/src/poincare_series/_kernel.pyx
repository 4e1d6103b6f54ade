# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometric-series recurrence on dense int64 boxes."""

from libc.stdint cimport int64_t

cdef extern from *:
    """
    static inline int ps_add_overflow(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int ps_add_overflow(long long a, long long b, long long *r) nogil


def geometric_inplace(int64_t[:, :, ::1] arr, Py_ssize_t s0, Py_ssize_t s1, Py_ssize_t s2):
    """In place ``arr[x] += arr[x - s]``; raises OverflowError past 64 bits."""
    cdef Py_ssize_t n0 = arr.shape[0], n1 = arr.shape[1], n2 = arr.shape[2]
    cdef Py_ssize_t i0, i1, i2, j0, j1, j2
    cdef Py_ssize_t a0, b0, d0, a1, b1, d1, a2, b2, d2
    cdef Py_ssize_t c0, c1, c2
    cdef long long out
    cdef bint overflow = 0
    if s0 == 0 and s1 == 0 and s2 == 0:
        raise ValueError("geometric step must be nonzero")
    # traverse each axis in the direction of the step so x - s is visited first
    if s0 >= 0:
        a0, b0, d0 = 0, n0, 1
    else:
        a0, b0, d0 = n0 - 1, -1, -1
    if s1 >= 0:
        a1, b1, d1 = 0, n1, 1
    else:
        a1, b1, d1 = n1 - 1, -1, -1
    if s2 >= 0:
        a2, b2, d2 = 0, n2, 1
    else:
        a2, b2, d2 = n2 - 1, -1, -1
    with nogil:
        i0 = a0
        for c0 in range(n0):
            j0 = i0 - s0
            if 0 <= j0 < n0:
                i1 = a1
                for c1 in range(n1):
                    j1 = i1 - s1
                    if 0 <= j1 < n1:
                        i2 = a2
                        for c2 in range(n2):
                            j2 = i2 - s2
                            if 0 <= j2 < n2:
                                if arr[j0, j1, j2] != 0:
                                    if ps_add_overflow(arr[i0, i1, i2], arr[j0, j1, j2], &out):
                                        overflow = 1
                                        break
                                    arr[i0, i1, i2] = out
                            i2 += d2
                    if overflow:
                        break
                    i1 += d1
            if overflow:
                break
            i0 += d0
    if overflow:
        raise OverflowError("coefficient exceeds 64-bit range")
