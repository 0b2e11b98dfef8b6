"""Numpy fallback for the sieve kernels, used when the extension is not built."""

import numpy as np


def spf_table(n):
    spf = np.zeros(n + 1, dtype=np.uint32)
    if n >= 1:
        spf[1] = 1
    for i in range(2, int(n**0.5) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def omega_table(n):
    out = np.zeros(n + 1, dtype=np.uint8)
    if n >= 1:
        out[1:] = omega_segment(1, n + 1, _base_primes(n))
    return out


def omega_segment(lo, hi, base_primes):
    size = max(hi - lo, 0)
    rem = np.arange(lo, lo + size, dtype=np.int64)
    cnt = np.zeros(size, dtype=np.uint8)
    for p in np.asarray(base_primes, dtype=np.int64).tolist():
        if p * p >= hi:
            break
        pe = p
        while pe < hi:
            start = (-lo) % pe
            cnt[start::pe] += 1
            rem[start::pe] //= p
            pe *= p
    cnt += (rem > 1).astype(np.uint8)
    return cnt


def _base_primes(n):
    r = int(n**0.5) + 1
    sieve = np.ones(r + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(r**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).astype(np.int64)
