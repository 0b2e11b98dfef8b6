# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernels. Same contract as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def spf_table(Py_ssize_t n):
    """Smallest prime factor of every k <= n (spf[0] = 0, spf[1] = 1)."""
    cdef cnp.ndarray[cnp.uint32_t, ndim=1] spf = np.zeros(n + 1, dtype=np.uint32)
    cdef Py_ssize_t i, j
    if n >= 1:
        spf[1] = 1
    for i in range(2, n + 1):
        if spf[i] == 0:
            spf[i] = <cnp.uint32_t>i
            if i <= n // i:
                j = i * i
                while j <= n:
                    if spf[j] == 0:
                        spf[j] = <cnp.uint32_t>i
                    j += i
    return spf


def omega_table(Py_ssize_t n):
    """Big omega of every k <= n; entry 0 is 0 by convention."""
    cdef cnp.ndarray[cnp.uint32_t, ndim=1] spf = spf_table(n)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] om = np.zeros(n + 1, dtype=np.uint8)
    cdef Py_ssize_t i
    for i in range(2, n + 1):
        om[i] = om[i // spf[i]] + 1
    return om


def omega_segment(unsigned long long lo, unsigned long long hi, cnp.int64_t[:] base_primes):
    """Big omega of lo..hi-1; base_primes must cover every prime <= sqrt(hi - 1).

    Every prime power p^e < hi marks its multiples once, and the product of the
    marked powers is kept per entry; a leftover cofactor above 1 is a single
    prime larger than sqrt(hi).
    """
    cdef Py_ssize_t size = <Py_ssize_t>(hi - lo) if hi > lo else 0
    out = np.zeros(size, dtype=np.uint8)
    acc_arr = np.ones(size, dtype=np.uint64)
    cdef cnp.uint8_t[:] cnt = out
    cdef cnp.uint64_t[:] acc = acc_arr
    cdef Py_ssize_t k, idx
    cdef unsigned long long p, pe, first
    for k in range(base_primes.shape[0]):
        p = <unsigned long long>base_primes[k]
        if p * p >= hi:
            break
        pe = p
        while pe < hi:
            first = ((lo + pe - 1) // pe) * pe
            idx = <Py_ssize_t>(first - lo)
            while idx < size:
                cnt[idx] += 1
                acc[idx] *= p
                idx += <Py_ssize_t>pe
            if pe > (hi - 1) // p:
                break
            pe *= p
    for idx in range(size):
        if acc[idx] != lo + <unsigned long long>idx:
            cnt[idx] += 1
    return out
