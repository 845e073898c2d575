# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense elimination modulo a prime.

Same interface as ``_kernels_py``.  Products stay below 2**62 because
``p < 2**31``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

IMPLEMENTATION = "cython"


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _rank_dense(int64_t* A, Py_ssize_t rows, Py_ssize_t cols, int64_t p) nogil:
    cdef Py_ssize_t rank = 0, c, r, piv, k
    cdef int64_t inv, f, tmp
    cdef int64_t* prow
    cdef int64_t* row
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if A[r * cols + c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(c, cols):
                tmp = A[piv * cols + k]
                A[piv * cols + k] = A[rank * cols + k]
                A[rank * cols + k] = tmp
        prow = A + rank * cols
        inv = _inv(prow[c], p)
        for k in range(c, cols):
            prow[k] = (prow[k] * inv) % p
        for r in range(rank + 1, rows):
            row = A + r * cols
            f = row[c]
            if f != 0:
                f = p - f
                for k in range(c, cols):
                    if prow[k] != 0:
                        row[k] = (row[k] + f * prow[k]) % p
        rank += 1
    return rank


def rank_mod_p(matrix, long long p):
    """Rank of an integer matrix modulo the prime ``p``."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] M = np.ascontiguousarray(
        np.mod(np.asarray(matrix, dtype=np.int64), p), dtype=np.int64
    )
    if M.ndim != 2 or M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1], rk
    cdef int64_t* data = <int64_t*> M.data
    with nogil:
        rk = _rank_dense(data, rows, cols, p)
    return rk


cdef Py_ssize_t _find(uint64_t* arr, Py_ssize_t n, uint64_t x) nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    if lo < n and arr[lo] == x:
        return lo
    return -1


def boundary_rank_mod_p(lower, upper, long long p):
    """Rank mod ``p`` of the boundary map from ``upper`` faces onto ``lower`` faces."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=1, mode="c"] lo = np.ascontiguousarray(lower, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1, mode="c"] up = np.ascontiguousarray(upper, dtype=np.uint64)
    cdef Py_ssize_t nl = lo.shape[0], nu = up.shape[0], i, k, j, rk
    if nl == 0 or nu == 0:
        return 0
    cdef int64_t* A = <int64_t*> calloc(nl * nu, sizeof(int64_t))
    if A == NULL:
        raise MemoryError()
    cdef uint64_t f, rest, low, sub
    cdef uint64_t* lp = <uint64_t*> lo.data
    cdef uint64_t* upp = <uint64_t*> up.data
    cdef int64_t neg = (p - 1) % p
    with nogil:
        for i in range(nu):
            f = upp[i]
            rest = f
            j = 0
            while rest:
                low = rest & (~rest + 1)
                rest ^= low
                sub = f ^ low
                k = _find(lp, nl, sub)
                if k >= 0:
                    A[i * nl + k] = 1 if (j % 2 == 0) else neg
                j += 1
        rk = _rank_dense(A, nu, nl, p)
    free(A)
    return rk
