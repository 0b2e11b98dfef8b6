"""Set descriptors: immutable terms denoting (possibly infinite) subsets of N.

Every term answers membership for any n, enumerates its members up to a bound
in ascending order, and reports the structural facts the containment rules use:
the levels its members can occupy (``profile``), the levels it fully contains
(``covered``), its members on a single level when that slice is finite
(``slice``), a finite upper bound when one is known (``upper``), and whether it
is a geometric sequence c * r**t, t >= s (``geometric``).
"""

from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import islice
from math import prod
from typing import Callable, Iterator

import numpy as np
from sympy import integer_nthroot

from ..arith import divisors, factorize, is_prime, nth_prime, omega, omega_upto, prime_index, primes_upto
from .levelset import LevelSet

DEFAULT_SEARCH = 100_000
_SLICE_LIMIT = 1_000_000


class SetDescriptor:
    dense = False  # enumeration goes through a boolean mask rather than a generator

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def iter_upto(self, bound: int) -> Iterator[int]:
        if not self.dense:
            raise NotImplementedError(type(self).__name__)
        return iter(np.flatnonzero(self.mask(bound)).tolist())

    def mask(self, bound: int) -> np.ndarray:
        m = np.zeros(max(bound, 0) + 1, dtype=bool)
        for e in self.iter_upto(bound):
            m[e] = True
        return m

    def enumerate(self, bound: int) -> list[int]:
        return list(self.iter_upto(bound))

    def first(self, bound: int) -> int | None:
        return next(iter(self.iter_upto(bound)), None)

    @property
    def children(self) -> tuple[SetDescriptor, ...]:
        return ()

    @cached_property
    def profile(self) -> LevelSet:
        return LevelSet.every()

    @cached_property
    def covered(self) -> LevelSet:
        return LevelSet.empty()

    @cached_property
    def upper(self) -> int | None:
        return None

    @cached_property
    def geometric(self) -> tuple[int, int, int] | None:
        return None

    @cached_property
    def infinite(self) -> bool:
        return False

    def nth(self, k: int) -> int | None:
        """k-th smallest member (0-indexed) when cheaply available."""
        g = self.geometric
        if g is not None:
            c, r, start = g
            return c * r ** (start + k)
        return None

    def enumerate_first(self, k: int, start: int = 1024, cap: int = 10**9) -> list[int] | None:
        """The k smallest members, or None if they are not all found below `cap`."""
        if k == 0:
            return []
        vals = [self.nth(j) for j in range(k)]
        if all(v is not None for v in vals):
            return vals
        bound = start
        while bound <= cap:
            out = list(islice(self.iter_upto(bound), k))
            if len(out) == k:
                return out
            if self.upper is not None and bound >= self.upper:
                return None
            bound *= 8
        return None

    def slice(self, i: int) -> tuple[int, ...] | None:
        if i not in self.profile:
            return ()
        u = self.upper
        if u is not None and u <= _SLICE_LIMIT:
            return tuple(e for e in self.iter_upto(u) if omega(e) == i)
        return None

    def __str__(self):
        from .grammar import render

        return render(self)


def _indexed_upto(d, bound):
    """Members of d up to bound via d.nth (for sets with cheap indexed access)."""
    k = 0
    while (v := d.nth(k)) is not None and v <= bound:
        yield v
        k += 1


def _geo_items(c, r, s, bound):
    v = c * r**s
    while v <= bound:
        yield v
        v *= r


def _geo_index(c, r, m):
    """t with m == c * r**t, or None."""
    if m % c:
        return None
    q, t = m // c, 0
    while q % r == 0:
        q //= r
        t += 1
    return t if q == 1 else None


@dataclass(frozen=True)
class Finite(SetDescriptor):
    elems: tuple[int, ...]

    def __init__(self, elems=()):
        items = tuple(sorted({int(e) for e in elems}))
        if items and items[0] < 1:
            raise ValueError("finite sets hold positive integers")
        object.__setattr__(self, "elems", items)

    @cached_property
    def _lookup(self):
        return frozenset(self.elems)

    def contains(self, n):
        return n in self._lookup

    def iter_upto(self, bound):
        return (e for e in self.elems if e <= bound)

    @cached_property
    def profile(self):
        return LevelSet(frozenset(omega(e) for e in self.elems))

    @cached_property
    def covered(self):
        return LevelSet.of(0) if 1 in self._lookup else LevelSet.empty()

    @cached_property
    def upper(self):
        return self.elems[-1] if self.elems else 0

    def nth(self, k):
        return self.elems[k] if k < len(self.elems) else None

    def slice(self, i):
        return tuple(e for e in self.elems if omega(e) == i)


@dataclass(frozen=True)
class Primes(SetDescriptor):
    dense = True

    def contains(self, n):
        return is_prime(n)

    def mask(self, bound):
        m = omega_upto(max(bound, 1))[: bound + 1] == 1
        return m

    def iter_upto(self, bound):
        return iter(primes_upto(bound).tolist())

    @cached_property
    def profile(self):
        return LevelSet.of(1)

    @cached_property
    def covered(self):
        return LevelSet.of(1)

    @cached_property
    def infinite(self):
        return True

    def nth(self, k):
        return nth_prime(k)

    def slice(self, i):
        return None if i == 1 else ()


@dataclass(frozen=True)
class Level(SetDescriptor):
    i: int

    def __post_init__(self):
        if self.i < 0:
            raise ValueError("level index must be >= 0")

    @property
    def dense(self):
        return self.i > 0

    def contains(self, n):
        return omega(n) == self.i

    def mask(self, bound):
        m = omega_upto(max(bound, 1))[: bound + 1] == self.i
        m[0] = False
        return m

    def iter_upto(self, bound):
        if self.i == 0:
            return iter([1] if bound >= 1 else [])
        if self.i == 1:
            return iter(primes_upto(bound).tolist())
        return super().iter_upto(bound)

    @cached_property
    def profile(self):
        return LevelSet.of(self.i)

    @cached_property
    def covered(self):
        return LevelSet.of(self.i)

    @cached_property
    def upper(self):
        return 1 if self.i == 0 else None

    @cached_property
    def infinite(self):
        return self.i > 0

    def nth(self, k):
        if self.i == 0:
            return 1 if k == 0 else None
        if self.i == 1:
            return nth_prime(k)
        return None

    def slice(self, i):
        if i != self.i:
            return ()
        return (1,) if i == 0 else None


@dataclass(frozen=True)
class PrimeClass(SetDescriptor):
    """Primes whose 0-based index in the prime sequence is congruent to r mod m."""

    r: int
    m: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.r < self.m:
            raise ValueError("need 0 <= r < m")

    def contains(self, n):
        return is_prime(n) and prime_index(n) % self.m == self.r

    def iter_upto(self, bound):
        return iter(primes_upto(bound)[self.r :: self.m].tolist())

    @cached_property
    def profile(self):
        return LevelSet.of(1)

    @cached_property
    def infinite(self):
        return True

    def nth(self, k):
        return nth_prime(self.r + k * self.m)

    def slice(self, i):
        return None if i == 1 else ()


@dataclass(frozen=True)
class Powers(SetDescriptor):
    """A^k = {a**k : a in A}."""

    base: SetDescriptor
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("power must be >= 1")

    @property
    def children(self):
        return (self.base,)

    def contains(self, n):
        r, exact = integer_nthroot(n, self.k)
        return bool(exact) and self.base.contains(int(r))

    def iter_upto(self, bound):
        if bound < 1:
            return iter(())
        root = int(integer_nthroot(bound, self.k)[0])
        return (a**self.k for a in self.base.iter_upto(root))

    @cached_property
    def profile(self):
        return self.base.profile.scale(self.k)

    @cached_property
    def upper(self):
        u = self.base.upper
        return None if u is None else u**self.k

    @cached_property
    def geometric(self):
        g = self.base.geometric
        return None if g is None else (g[0] ** self.k, g[1] ** self.k, g[2])

    @cached_property
    def infinite(self):
        return self.base.infinite

    def nth(self, k):
        v = self.base.nth(k)
        return None if v is None else v**self.k

    def slice(self, i):
        if i % self.k:
            return ()
        s = self.base.slice(i // self.k)
        return None if s is None else tuple(a**self.k for a in s)


def _search_products(cands, n, rem, start, used=()):
    """Pick n distinct members of ascending `cands` (index >= start) multiplying to rem."""
    if n == 0:
        return rem == 1
    for idx in range(start, len(cands)):
        d = cands[idx]
        if d > 1 and d**n > rem:
            break
        if rem % d == 0 and _search_products(cands, n - 1, rem // d, idx + 1):
            return True
    return False


@dataclass(frozen=True)
class DistinctProducts(SetDescriptor):
    """A^(n): products of n pairwise distinct members of A."""

    base: SetDescriptor
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("factor count must be >= 0")

    @property
    def children(self):
        return (self.base,)

    def contains(self, m):
        cands = [d for d in divisors(m) if self.base.contains(d)]
        return _search_products(cands, self.n, m, 0)

    def iter_upto(self, bound):
        items = self.base.enumerate(bound)
        found = set()

        def rec(p, need, start):
            if need == 0:
                found.add(p)
                return
            for idx in range(start, len(items)):
                q = p * items[idx]
                if q > bound:
                    break
                rec(q, need - 1, idx + 1)

        if bound >= 1:
            rec(1, self.n, 0)
        return iter(sorted(found))

    @cached_property
    def profile(self):
        return self.base.profile.nfold(self.n)

    @cached_property
    def upper(self):
        u = self.base.upper
        return None if u is None else u**self.n

    @cached_property
    def infinite(self):
        return self.n >= 1 and self.base.infinite


@dataclass(frozen=True)
class PowerProducts(SetDescriptor):
    """Products of pairwise distinct members a of A, blockwise raised to
    exponent k and taken n at a time, for each (k, n) in blocks."""

    base: SetDescriptor
    blocks: tuple[tuple[int, int], ...]

    @property
    def children(self):
        return (self.base,)

    def contains(self, m):
        cands = [d for d in divisors(m) if self.base.contains(d)]

        def rec(bi, need, rem, start, used):
            if bi == len(self.blocks):
                return rem == 1
            k, n = self.blocks[bi]
            if need == 0:
                nxt = self.blocks[bi + 1][1] if bi + 1 < len(self.blocks) else 0
                return rec(bi + 1, nxt, rem, 0, used)
            for idx in range(start, len(cands)):
                d = cands[idx]
                if d in used:
                    continue
                dk = d**k
                if d > 1 and dk > rem:
                    break
                if rem % dk == 0 and rec(bi, need - 1, rem // dk, idx + 1, used | {d}):
                    return True
            return False

        return bool(self.blocks) and rec(0, self.blocks[0][1], m, 0, frozenset()) or (
            not self.blocks and m == 1
        )

    def iter_upto(self, bound):
        items = self.base.enumerate(bound)
        found = set()

        def rec(bi, need, p, start, used):
            if bi == len(self.blocks):
                found.add(p)
                return
            k, n = self.blocks[bi]
            if need == 0:
                nxt = self.blocks[bi + 1][1] if bi + 1 < len(self.blocks) else 0
                rec(bi + 1, nxt, p, 0, used)
                return
            for idx in range(start, len(items)):
                a = items[idx]
                if a in used:
                    continue
                q = p * a**k
                if q > bound:
                    break
                rec(bi, need - 1, q, idx + 1, used | {a})

        if bound >= 1 and self.blocks:
            rec(0, self.blocks[0][1], 1, 0, frozenset())
        elif bound >= 1:
            found.add(1)
        return iter(sorted(found))

    @cached_property
    def profile(self):
        out = LevelSet.of(0)
        for k, n in self.blocks:
            out = out.sumset(self.base.profile.scale(k).nfold(n))
        return out

    @cached_property
    def upper(self):
        u = self.base.upper
        if u is None:
            return None
        return prod(u ** (k * n) for k, n in self.blocks)

    @cached_property
    def infinite(self):
        return self.base.infinite and any(n for _, n in self.blocks)


@dataclass(frozen=True)
class Scale(SetDescriptor):
    """nA = {n * a : a in A}."""

    n: int
    base: SetDescriptor

    @property
    def children(self):
        return (self.base,)

    @property
    def dense(self):
        return self.base.dense

    def contains(self, m):
        return m % self.n == 0 and self.base.contains(m // self.n)

    def iter_upto(self, bound):
        if self.dense:
            return super().iter_upto(bound)
        return (self.n * a for a in self.base.iter_upto(bound // self.n))

    def mask(self, bound):
        if not self.dense:
            return super().mask(bound)
        out = np.zeros(bound + 1, dtype=bool)
        inner = self.base.mask(bound // self.n)
        out[self.n :: self.n] = inner[1:]
        return out

    @cached_property
    def profile(self):
        return self.base.profile.shift(omega(self.n))

    @cached_property
    def upper(self):
        u = self.base.upper
        return None if u is None else self.n * u

    @cached_property
    def geometric(self):
        g = self.base.geometric
        return None if g is None else (self.n * g[0], g[1], g[2])

    @cached_property
    def infinite(self):
        return self.base.infinite

    def nth(self, k):
        v = self.base.nth(k)
        return None if v is None else self.n * v

    def slice(self, i):
        j = i - omega(self.n)
        if j < 0:
            return ()
        s = self.base.slice(j)
        return None if s is None else tuple(self.n * a for a in s)


@dataclass(frozen=True)
class Quotient(SetDescriptor):
    """A / n = {m : m * n in A}."""

    base: SetDescriptor
    n: int

    @property
    def children(self):
        return (self.base,)

    @property
    def dense(self):
        return self.base.dense

    def rewritten(self):
        """Equivalent term when A is a level: L_i / n = L_{i - omega(n)} or empty."""
        if isinstance(self.base, Level):
            k = omega(self.n)
            return Level(self.base.i - k) if k <= self.base.i else Finite()
        if isinstance(self.base, Primes):
            return Quotient(Level(1), self.n).rewritten()
        return None

    def contains(self, m):
        return self.base.contains(m * self.n)

    def iter_upto(self, bound):
        if self.dense:
            return super().iter_upto(bound)
        n = self.n
        return (e // n for e in self.base.iter_upto(bound * n) if e % n == 0)

    def mask(self, bound):
        if not self.dense:
            return super().mask(bound)
        return self.base.mask(bound * self.n)[:: self.n][: bound + 1].copy()

    @cached_property
    def profile(self):
        r = self.rewritten()
        if r is not None:
            return r.profile
        return self.base.profile.shift(-omega(self.n))

    @cached_property
    def covered(self):
        r = self.rewritten()
        return r.covered if r is not None else LevelSet.empty()

    @cached_property
    def upper(self):
        u = self.base.upper
        return None if u is None else u // self.n

    @cached_property
    def infinite(self):
        r = self.rewritten()
        return r.infinite if r is not None else False

    def slice(self, i):
        s = self.base.slice(i + omega(self.n))
        if s is None:
            return super().slice(i)
        return tuple(e // self.n for e in s if e % self.n == 0)


@dataclass(frozen=True)
class UpClosure(SetDescriptor):
    """A-up = {n : some a in A divides n}."""

    base: SetDescriptor
    dense = True

    @property
    def children(self):
        return (self.base,)

    def contains(self, n):
        b = self.base
        if isinstance(b, Finite) and len(b.elems) <= 8:
            return any(n % a == 0 for a in b.elems)
        return any(b.contains(d) for d in divisors(n))

    def mask(self, bound):
        m = np.zeros(bound + 1, dtype=bool)
        for a in self.base.iter_upto(bound):
            if not m[a]:
                m[a::a] = True
        return m

    @cached_property
    def profile(self):
        lo = self.base.profile.min()
        return LevelSet.empty() if lo is None else LevelSet.at_least(lo)

    @cached_property
    def upper(self):
        return 0 if self.base.upper == 0 else None

    @cached_property
    def infinite(self):
        b = self.base
        return b.infinite or bool(b.upper)

    def slice(self, i):
        return () if i not in self.profile else None


@dataclass(frozen=True)
class DownClosure(SetDescriptor):
    """A-down = {n : n divides some a in A}.

    For infinite A membership searches multiples n*k <= search_bound unless a
    structural shortcut applies; ``exact`` tells which.
    """

    base: SetDescriptor
    search_bound: int = DEFAULT_SEARCH

    @property
    def children(self):
        return (self.base,)

    @property
    def dense(self):
        return self.base.upper is None

    def _shortcut(self, n):
        b = self.base
        if isinstance(b, Level):
            return omega(n) <= b.i
        if isinstance(b, Primes):
            return n == 1 or is_prime(n)
        if isinstance(b, (MultiplesOf, UpClosure)) and b.infinite:
            return True
        if isinstance(b, Complement) and b.base.upper is not None:
            return True
        return None

    def exact(self, n):
        return self.base.upper is not None or self._shortcut(n) is not None

    def contains(self, n):
        b = self.base
        if b.upper is not None:
            return any(a % n == 0 for a in b.iter_upto(b.upper))
        s = self._shortcut(n)
        if s is not None:
            return s
        return any(b.contains(n * k) for k in range(1, self.search_bound // n + 1))

    def iter_upto(self, bound):
        b = self.base
        if b.upper is not None:
            found = {d for a in b.iter_upto(b.upper) for d in divisors(a) if d <= bound}
            return iter(sorted(found))
        return super().iter_upto(bound)

    def mask(self, bound):
        if self.base.upper is not None:
            return super().mask(bound)
        m = np.zeros(bound + 1, dtype=bool)
        for n in range(1, bound + 1):
            m[n] = self.contains(n)
        return m

    @cached_property
    def profile(self):
        p = self.base.profile
        if p.finite:
            top = max(p.items, default=-1)
            return LevelSet(frozenset(range(top + 1)))
        return LevelSet.every()

    @cached_property
    def covered(self):
        b = self.base
        if isinstance(b, Level):
            return LevelSet(frozenset(range(b.i + 1)))
        return LevelSet.empty()

    @cached_property
    def upper(self):
        return self.base.upper

    @cached_property
    def infinite(self):
        return self.base.infinite


@dataclass(frozen=True)
class MultiplesOf(SetDescriptor):
    n: int
    dense = True

    def contains(self, m):
        return m % self.n == 0

    def mask(self, bound):
        m = np.zeros(bound + 1, dtype=bool)
        m[self.n :: self.n] = True
        return m

    @cached_property
    def profile(self):
        return LevelSet.at_least(omega(self.n))

    @cached_property
    def covered(self):
        return LevelSet.every() if self.n == 1 else LevelSet.empty()

    @cached_property
    def infinite(self):
        return True

    def nth(self, k):
        return self.n * (k + 1)

    def slice(self, i):
        k = omega(self.n)
        if i < k:
            return ()
        return (self.n,) if i == k else None


@dataclass(frozen=True)
class ProductUnion(SetDescriptor):
    """Union over b in B of bC, i.e. {b * c : b in B, c in C}."""

    left: SetDescriptor
    right: SetDescriptor

    @property
    def children(self):
        return (self.left, self.right)

    @property
    def dense(self):
        return self.left.dense or self.right.dense

    def contains(self, m):
        b, c = self.left, self.right
        if b.upper is not None and b.upper <= 4096:
            return any(m % x == 0 and c.contains(m // x) for x in b.iter_upto(min(b.upper, m)))
        if c.upper is not None and c.upper <= 4096:
            return any(m % y == 0 and b.contains(m // y) for y in c.iter_upto(min(c.upper, m)))
        for side, other in ((b, c), (c, b)):
            if side.nth(0) is not None:
                return any(m % x == 0 and other.contains(m // x) for x in _indexed_upto(side, m))
        return any(b.contains(d) and c.contains(m // d) for d in divisors(m))

    def iter_upto(self, bound):
        if self.dense:
            return super().iter_upto(bound)
        left = self.left.enumerate(bound)
        right = self.right.enumerate(bound)
        found = set()
        for x in left:
            for y in right:
                if x * y > bound:
                    break
                found.add(x * y)
        return iter(sorted(found))

    def mask(self, bound):
        if not self.dense:
            return super().mask(bound)
        sparse, other = (self.left, self.right) if not self.left.dense else (self.right, self.left)
        out = np.zeros(bound + 1, dtype=bool)
        om = other.mask(bound)
        for x in sparse.iter_upto(bound):
            seg = om[1 : bound // x + 1]
            out[x :: x][: len(seg)] |= seg
        return out

    @cached_property
    def profile(self):
        return self.left.profile.sumset(self.right.profile)

    @cached_property
    def upper(self):
        a, b = self.left.upper, self.right.upper
        if a == 0 or b == 0:
            return 0
        return None if a is None or b is None else a * b

    @cached_property
    def geometric(self):
        ga, gb = self.left.geometric, self.right.geometric
        if ga and gb and ga[1] == gb[1]:
            return (ga[0] * gb[0], ga[1], ga[2] + gb[2])
        for g, other in ((ga, self.right), (gb, self.left)):
            if g and isinstance(other, Finite) and len(other.elems) == 1:
                return (other.elems[0] * g[0], g[1], g[2])
        return None

    @cached_property
    def infinite(self):
        a, b = self.left, self.right
        return (a.infinite and (b.infinite or bool(b.upper))) or (
            b.infinite and bool(a.upper)
        )

    def slice(self, i):
        a, b = self.left, self.right
        found = set()
        for j in range(i + 1):
            if j not in a.profile or (i - j) not in b.profile:
                continue
            sa, sb = a.slice(j), b.slice(i - j)
            if sa == () or sb == ():
                continue
            if sa is None or sb is None:
                return super().slice(i)
            found.update(x * y for x in sa for y in sb)
        return tuple(sorted(found))


@dataclass(frozen=True)
class GeomTimes(SetDescriptor):
    """{c * r**t : t >= start}; start defaults to 1."""

    c: int
    r: int
    start: int = 1

    def __post_init__(self):
        if self.c < 1 or self.r < 2 or self.start < 0:
            raise ValueError("need c >= 1, r >= 2, start >= 0")

    def contains(self, m):
        t = _geo_index(self.c, self.r, m)
        return t is not None and t >= self.start

    def iter_upto(self, bound):
        return _geo_items(self.c, self.r, self.start, bound)

    @cached_property
    def profile(self):
        base, step = omega(self.c), omega(self.r)
        lo = base + step * self.start
        if step == 1:
            return LevelSet.at_least(lo)
        return LevelSet.at_least(lo)

    @cached_property
    def geometric(self):
        return (self.c, self.r, self.start)

    @cached_property
    def infinite(self):
        return True

    def nth(self, k):
        return self.c * self.r ** (self.start + k)

    def slice(self, i):
        base, step = omega(self.c), omega(self.r)
        t, rem = divmod(i - base, step)
        if i < base or rem or t < self.start:
            return ()
        return (self.c * self.r**t,)


@dataclass(frozen=True)
class Selector:
    name: str
    fn: Callable[[int], int]
    geometric: tuple[int, int, int] | None = None
    # each term divides the next and only adds primes >= the largest prime so far,
    # so the k smallest prime factors of sel(i) are fixed once i >= k
    prefix_chain: bool = False


@lru_cache(maxsize=4096)
def _primorial(i):
    return 1 if i == 0 else _primorial(i - 1) * nth_prime(i - 1)


SELECTORS = {
    "pow2": Selector("pow2", lambda i: 1 << i, (1, 2, 0), True),
    "primorial": Selector("primorial", _primorial, None, True),
}


def register_selector(name, fn, geometric=None, check_upto=24, prefix_chain=False):
    """Add a diagonal selector; fn(i) must be strictly increasing with omega(fn(i)) == i.

    ``prefix_chain`` is checked on the first `check_upto` terms.
    """
    vals = [fn(i) for i in range(check_upto)]
    if any(omega(v) != i for i, v in enumerate(vals)):
        raise ValueError(f"selector {name} leaves level i for some i < {check_upto}")
    if any(a >= b for a, b in zip(vals, vals[1:])):
        raise ValueError(f"selector {name} is not strictly increasing")
    if prefix_chain:
        for a, b in zip(vals, vals[1:]):
            top = max(factorize(a).primes(), default=1)
            if b % a or any(q < top for q in factorize(b // a).primes()):
                raise ValueError(f"selector {name} is not a prefix chain at {a} -> {b}")
    SELECTORS[name] = Selector(name, fn, geometric, prefix_chain)
    _SELECTOR_CACHE.pop(name, None)


_SELECTOR_CACHE: dict[str, list[int]] = {}


def _selector_values(name, m):
    """Cached prefix sel(0), sel(1), ... reaching at least m."""
    vals = _SELECTOR_CACHE.setdefault(name, [])
    fn = SELECTORS[name].fn
    while not vals or vals[-1] < m:
        vals.append(fn(len(vals)))
    return vals


@dataclass(frozen=True)
class Diagonal(SetDescriptor):
    """{sel(0), sel(1), ...} with sel(i) on level i; meets each level in one point."""

    selector: str = "pow2"

    def __post_init__(self):
        if self.selector not in SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}")

    @property
    def sel(self):
        return SELECTORS[self.selector].fn

    def contains(self, m):
        vals = _selector_values(self.selector, m)
        j = bisect.bisect_left(vals, m)
        return j < len(vals) and vals[j] == m

    def iter_upto(self, bound):
        i = 0
        while (v := self.sel(i)) <= bound:
            yield v
            i += 1

    @cached_property
    def geometric(self):
        return SELECTORS[self.selector].geometric

    @cached_property
    def infinite(self):
        return True

    def nth(self, k):
        return self.sel(k)

    def slice(self, i):
        return (self.sel(i),)


@dataclass(frozen=True)
class Tail(SetDescriptor):
    """A without its k smallest members."""

    base: SetDescriptor
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("tail offset must be >= 0")

    @property
    def children(self):
        return (self.base,)

    @property
    def dense(self):
        return self.base.dense

    @cached_property
    def _threshold(self):
        """Smallest member kept, or None when unknown or nonexistent."""
        if self.k == 0:
            return 0
        v = self.base.nth(self.k)
        return v

    def contains(self, m):
        if not self.base.contains(m):
            return False
        if self.k == 0:
            return True
        t = self._threshold
        if t is not None:
            return m >= t
        below = 0
        for _ in self.base.iter_upto(m - 1):
            below += 1
            if below >= self.k:
                return True
        return False

    def iter_upto(self, bound):
        it = iter(self.base.iter_upto(bound))
        for _ in range(self.k):
            if next(it, None) is None:
                return iter(())
        return it

    def mask(self, bound):
        return SetDescriptor.mask(self, bound)

    @cached_property
    def profile(self):
        return self.base.profile

    @cached_property
    def upper(self):
        return self.base.upper

    @cached_property
    def geometric(self):
        g = self.base.geometric
        return None if g is None else (g[0], g[1], g[2] + self.k)

    @cached_property
    def infinite(self):
        return self.base.infinite

    def nth(self, k):
        return self.base.nth(self.k + k)

    def slice(self, i):
        s = self.base.slice(i)
        if s is None:
            return None
        return tuple(e for e in s if self.contains(e))


@dataclass(frozen=True)
class Union(SetDescriptor):
    parts: tuple[SetDescriptor, ...]

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = tuple(parts[0])
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def children(self):
        return self.parts

    @property
    def dense(self):
        return any(p.dense for p in self.parts)

    def contains(self, n):
        return any(p.contains(n) for p in self.parts)

    def iter_upto(self, bound):
        if self.dense:
            return super().iter_upto(bound)
        last = None
        out = []
        for v in heapq.merge(*(p.iter_upto(bound) for p in self.parts)):
            if v != last:
                out.append(v)
                last = v
        return iter(out)

    def mask(self, bound):
        m = np.zeros(bound + 1, dtype=bool)
        for p in self.parts:
            m |= p.mask(bound)
        return m

    @cached_property
    def profile(self):
        out = LevelSet.empty()
        for p in self.parts:
            out = out.union(p.profile)
        return out

    @cached_property
    def covered(self):
        out = LevelSet.empty()
        for p in self.parts:
            out = out.union(p.covered)
        return out

    @cached_property
    def upper(self):
        us = [p.upper for p in self.parts]
        return None if any(u is None for u in us) else max(us, default=0)

    @cached_property
    def infinite(self):
        return any(p.infinite for p in self.parts)

    def slice(self, i):
        found = set()
        for p in self.parts:
            s = p.slice(i)
            if s is None:
                return None
            found.update(s)
        return tuple(sorted(found))


@dataclass(frozen=True)
class Intersection(SetDescriptor):
    parts: tuple[SetDescriptor, ...]

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = tuple(parts[0])
        if not parts:
            raise ValueError("empty intersection")
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def children(self):
        return self.parts

    @property
    def dense(self):
        return all(p.dense for p in self.parts)

    def _driver(self):
        sparse = [p for p in self.parts if not p.dense]
        return min(sparse, key=lambda p: (p.upper is None, p.upper or 0))

    def contains(self, n):
        return all(p.contains(n) for p in self.parts)

    def iter_upto(self, bound):
        if self.dense:
            return super().iter_upto(bound)
        d = self._driver()
        rest = [p for p in self.parts if p is not d]
        return (v for v in d.iter_upto(bound) if all(p.contains(v) for p in rest))

    def mask(self, bound):
        if not self.dense:
            return super().mask(bound)
        m = np.ones(bound + 1, dtype=bool)
        for p in self.parts:
            m &= p.mask(bound)
        return m

    @cached_property
    def profile(self):
        out = LevelSet.every()
        for p in self.parts:
            out = out.intersection(p.profile)
        return out

    @cached_property
    def covered(self):
        out = LevelSet.every()
        for p in self.parts:
            out = out.intersection(p.covered)
        return out

    @cached_property
    def upper(self):
        us = [p.upper for p in self.parts if p.upper is not None]
        return min(us) if us else None

    @cached_property
    def geometric(self):
        # nested tails of one geometric sequence
        gs = [p.geometric for p in self.parts]
        if all(gs) and len({g[:2] for g in gs}) == 1:
            c, r = gs[0][:2]
            return (c, r, max(g[2] for g in gs))
        return None

    @cached_property
    def infinite(self):
        if self.geometric is not None:
            return True
        from .rules import finite_exceptions

        # an infinite part that every other part contains up to finitely many points
        return any(
            p.infinite and all(q is p or finite_exceptions(p, q) is not None for q in self.parts)
            for p in self.parts
        )

    def slice(self, i):
        for p in self.parts:
            s = p.slice(i)
            if s is not None:
                return tuple(v for v in s if self.contains(v))
        return None


@dataclass(frozen=True)
class Complement(SetDescriptor):
    base: SetDescriptor
    dense = True

    @property
    def children(self):
        return (self.base,)

    def contains(self, n):
        return not self.base.contains(n)

    def mask(self, bound):
        m = ~self.base.mask(bound)
        m[0] = False
        return m

    @cached_property
    def profile(self):
        return self.base.covered.complement()

    @cached_property
    def covered(self):
        return self.base.profile.complement()

    @cached_property
    def infinite(self):
        # every level above 0 is infinite, so covering one of them is enough
        cov = self.covered
        return self.base.upper is not None or not cov.finite or any(i > 0 for i in cov.items)

    def slice(self, i):
        if i not in self.profile:
            return ()
        if i == 0:
            return () if self.base.contains(1) else (1,)
        return None


@dataclass(frozen=True)
class Image(SetDescriptor):
    """f(A) for a named map f (see ``witnesses.NamedMap``).

    Membership uses, in order: a reduced equivalent term (finite source, or a
    geometric source the map sends to a geometric sequence), the map's own
    preimage finder, and finally a bounded search over multiples.
    """

    fmap: object
    base: SetDescriptor
    search_bound: int = field(default=DEFAULT_SEARCH, compare=False)

    @property
    def children(self):
        return (self.base,)

    @cached_property
    def reduced(self) -> SetDescriptor | None:
        b, f = self.base, self.fmap
        if b.upper is not None:
            return Finite(f(a) for a in b.iter_upto(b.upper))
        g = b.geometric
        if g is not None:
            img = f.geometric_image(*g)
            if img is not None:
                return GeomTimes(*img)
        if hasattr(f, "power") and f.power is not None:
            return Powers(b, f.power)
        return None

    @property
    def dense(self):
        r = self.reduced
        return True if r is None else r.dense

    def exact(self, m):
        return self.reduced is not None or self.fmap.preimages(m) is not None

    def contains(self, m):
        r = self.reduced
        if r is not None:
            return r.contains(m)
        pre = self.fmap.preimages(m)
        if pre is not None:
            return any(self.base.contains(a) for a in pre)
        if self.fmap.kind == "factor":
            return any(
                self.base.contains(a) and self.fmap(a) == m
                for a in range(m, self.search_bound + 1, m)
                if self.fmap.defined(a)
            )
        return False

    def iter_upto(self, bound):
        r = self.reduced
        if r is not None:
            return r.iter_upto(bound)
        return super().iter_upto(bound)

    def mask(self, bound):
        r = self.reduced
        if r is not None:
            return r.mask(bound)
        m = np.zeros(bound + 1, dtype=bool)
        for n in range(1, bound + 1):
            m[n] = self.contains(n)
        return m

    @cached_property
    def profile(self):
        r = self.reduced
        return r.profile if r is not None else self.fmap.image_profile(self.base.profile)

    @cached_property
    def upper(self):
        r = self.reduced
        return r.upper if r is not None else None

    @cached_property
    def geometric(self):
        r = self.reduced
        return r.geometric if r is not None else None

    @cached_property
    def infinite(self):
        r = self.reduced
        if r is not None:
            return r.infinite
        return self.base.infinite and self.fmap.finite_to_one

    def nth(self, k):
        r = self.reduced
        return r.nth(k) if r is not None else None

    def slice(self, i):
        r = self.reduced
        return r.slice(i) if r is not None else super().slice(i)
