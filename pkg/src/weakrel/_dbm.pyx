# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled shortest-path closure over 64-bit bounds.

Same contract as ``_dbm_py.floyd_warshall``.  Raises ``OverflowError`` when an
input bound or an intermediate sum does not fit in 64 bits; the caller then
falls back to the arbitrary-precision implementation.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    bint __builtin_saddll_overflow(long long a, long long b, long long *res) nogil


def floyd_warshall(ub, Py_ssize_t n):
    cdef Py_ssize_t size = n * n
    cdef long long *w = <long long *> malloc(size * sizeof(long long))
    cdef unsigned char *fin = <unsigned char *> malloc(size * sizeof(unsigned char))
    cdef Py_ssize_t i, j, k, ri, rk
    cdef long long s, wik
    cdef bint overflow = False
    cdef bint negative = False
    if w == NULL or fin == NULL:
        free(w)
        free(fin)
        raise MemoryError()
    try:
        for i in range(size):
            v = ub[i]
            if v is None:
                fin[i] = 0
                w[i] = 0
            else:
                fin[i] = 1
                w[i] = v
        with nogil:
            for k in range(n):
                rk = k * n
                for i in range(n):
                    if not fin[i * n + k]:
                        continue
                    wik = w[i * n + k]
                    ri = i * n
                    for j in range(n):
                        if not fin[rk + j]:
                            continue
                        if __builtin_saddll_overflow(wik, w[rk + j], &s):
                            overflow = True
                            break
                        if not fin[ri + j] or s < w[ri + j]:
                            w[ri + j] = s
                            fin[ri + j] = 1
                    if overflow:
                        break
                if overflow:
                    break
                if w[rk + k] < 0:
                    negative = True
                    break
        if overflow:
            raise OverflowError("bound sum exceeds 64 bits")
        if negative:
            return None
        out = [None] * size
        for i in range(size):
            if fin[i]:
                if i % (n + 1) == 0 and w[i] < 0:
                    return None
                out[i] = w[i]
        return out
    finally:
        free(w)
        free(fin)
