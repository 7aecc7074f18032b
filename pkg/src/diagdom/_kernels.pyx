# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: dense matrix multiplication over Z/p.

Tensor-network contraction over a prime field reduces to repeated
matrix products after axis reshuffling; this kernel does the product
with 128-bit accumulation so any modulus below 2^63 is safe.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport uint64_t

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"


def matmul_mod(cnp.ndarray[cnp.uint64_t, ndim=2] a,
               cnp.ndarray[cnp.uint64_t, ndim=2] b,
               uint64_t p):
    """(a @ b) % p for C-contiguous uint64 matrices with entries < p."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t k = a.shape[1]
    cdef Py_ssize_t n = b.shape[1]
    if b.shape[0] != k:
        raise ValueError("inner dimensions do not match")
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] out = np.zeros((m, n), dtype=np.uint64)
    cdef Py_ssize_t i, j, t
    cdef uint128 acc
    cdef uint64_t av
    for i in range(m):
        for j in range(n):
            acc = 0
            for t in range(k):
                acc += <uint128> a[i, t] * b[t, j]
                if acc >= <uint128> 1 << 126:
                    acc %= p
            out[i, j] = <uint64_t> (acc % p)
    return out


def scale_mod(cnp.ndarray[cnp.uint64_t, ndim=1] a, uint64_t c, uint64_t p):
    """(a * c) % p elementwise."""
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = <uint64_t> ((<uint128> a[i] * c) % p)
    return out
