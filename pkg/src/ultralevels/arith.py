"""Factorization, the level function (big omega), prime signatures and the
level-quotient law, plus a segmented big-omega sieve for bulk work."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod

import numpy as np
from sympy import factorint, integer_nthroot

from ._backend import kernels
from .errors import DomainError

DEFAULT_SEGMENT = 1 << 20
_SPF_LIMIT = 1 << 21


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.factors) != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)) or any(e < 1 for _, e in self.factors):
            raise ValueError("primes must be strictly ascending with positive exponents")

    @property
    def omega(self) -> int:
        return sum(e for _, e in self.factors)

    def primes(self) -> list[int]:
        """Prime factors repeated by multiplicity, ascending."""
        return [p for p, e in self.factors for _ in range(e)]


@dataclass(frozen=True, order=True)
class PrimeSignature:
    exponents: tuple[int, ...]

    def __post_init__(self):
        ex = self.exponents
        if not ex or any(e < 1 for e in ex) or list(ex) != sorted(ex, reverse=True):
            raise ValueError(f"not a partition: {ex}")

    @property
    def level(self) -> int:
        return sum(self.exponents)

    def __str__(self):
        return "(" + ",".join(map(str, self.exponents)) + ")"


class _Tables:
    """Lazily grown smallest-prime-factor and omega tables."""

    def __init__(self):
        self.spf = kernels.spf_table(1024)
        self.omega = kernels.omega_table(1024)
        self.primes = np.flatnonzero(self.spf[2:] == np.arange(2, 1025)) + 2

    def ensure_spf(self, n):
        if n >= len(self.spf):
            size = max(n, 2 * len(self.spf))
            self.spf = kernels.spf_table(size)
            idx = np.arange(2, size + 1)
            self.primes = np.flatnonzero(self.spf[2:] == idx) + 2

    def ensure_omega(self, n):
        if n >= len(self.omega):
            self.omega = kernels.omega_table(max(n, 2 * len(self.omega)))


_tables = _Tables()


def _check_positive(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"expected a positive integer, got {n!r}")
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=1 << 16)
def _factor_pairs(n):
    if n < _SPF_LIMIT:
        _tables.ensure_spf(min(_SPF_LIMIT, max(n, 1024)))
        spf = _tables.spf
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return tuple(out)
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def factorize(n: int) -> Factorization:
    _check_positive(n)
    n = int(n)
    return Factorization(n, _factor_pairs(n))


def omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity; n lies on level omega(n)."""
    _check_positive(n)
    n = int(n)
    if n < len(_tables.omega):
        return int(_tables.omega[n])
    if n < _SPF_LIMIT:
        _tables.ensure_omega(n)
        return int(_tables.omega[n])
    return sum(e for _, e in _factor_pairs(n))


def signature(n: int) -> PrimeSignature:
    _check_positive(n)
    if n == 1:
        raise DomainError("1 has an empty prime signature and lies in no class")
    exps = sorted((e for _, e in _factor_pairs(int(n))), reverse=True)
    return PrimeSignature(tuple(exps))


def signature_classes(i: int) -> list[PrimeSignature]:
    """All integer partitions of i in descending-lexicographic order."""
    if i < 1:
        raise DomainError("level 0 has no signature class")
    return [PrimeSignature(p) for p in _partitions(i, i)]


def _partitions(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def quotient_level(i: int, m: int) -> int | None:
    """Level index of L_i / m = {r : r*m in L_i}, or None when that set is empty."""
    if i < 0:
        raise DomainError("level index must be >= 0")
    k = omega(m)
    return i - k if k <= i else None


def omega_sieve(lo: int, hi: int, segment: int = DEFAULT_SEGMENT) -> np.ndarray:
    """omega(lo + k) for k in range(hi - lo + 1), computed segment by segment."""
    if lo < 1:
        raise DomainError("lo must be >= 1")
    if hi < lo:
        return np.zeros(0, dtype=np.uint8)
    if segment < 1:
        raise ValueError("segment size must be positive")
    base = primes_upto(isqrt(hi) + 1)
    out = np.empty(hi - lo + 1, dtype=np.uint8)
    start = lo
    while start <= hi:
        stop = min(start + segment, hi + 1)
        out[start - lo : stop - lo] = kernels.omega_segment(start, stop, base)
        start = stop
    return out


def omega_upto(n: int) -> np.ndarray:
    """Shared read-only omega table covering [0, n] (entry 0 is 0)."""
    _tables.ensure_omega(n)
    view = _tables.omega[: n + 1]
    view.flags.writeable = False
    return view


def primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    _tables.ensure_spf(n)
    ps = _tables.primes
    return ps[: np.searchsorted(ps, n, side="right")].astype(np.int64)


def is_prime(n: int) -> bool:
    return n >= 2 and omega(n) == 1


def nth_prime(k: int) -> int:
    """k-th prime, 0-indexed (nth_prime(0) == 2)."""
    if k < 0:
        raise DomainError("prime index must be >= 0")
    size = 1024
    while True:
        ps = primes_upto(size)
        if len(ps) > k:
            return int(ps[k])
        size *= 2


def prime_index(p: int) -> int:
    """Inverse of nth_prime on primes."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p < (1 << 26):
        ps = primes_upto(p)
        return bisect.bisect_left(ps.tolist(), p)
    from sympy import primepi

    return int(primepi(p)) - 1


def divisors(n: int) -> list[int]:
    _check_positive(n)
    divs = [1]
    for p, e in _factor_pairs(int(n)):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n, or None."""
    if k == 1:
        return n
    r, exact = integer_nthroot(n, k)
    return int(r) if exact else None
