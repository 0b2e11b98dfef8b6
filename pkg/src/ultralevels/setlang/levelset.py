"""Sets of level indices (values of omega): finite, or cofinite in {0, 1, 2, ...}."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LevelSet:
    # finite=True: exactly `items`; finite=False: every index except `items`
    items: frozenset
    finite: bool = True

    @classmethod
    def of(cls, *levels):
        return cls(frozenset(levels), True)

    @classmethod
    def every(cls):
        return cls(frozenset(), False)

    @classmethod
    def at_least(cls, lo):
        return cls(frozenset(range(max(lo, 0))), False)

    @classmethod
    def empty(cls):
        return cls(frozenset(), True)

    def __contains__(self, i):
        return (i in self.items) == self.finite

    def is_empty(self):
        return self.finite and not self.items

    def min(self):
        if self.finite:
            return min(self.items) if self.items else None
        i = 0
        while i in self.items:
            i += 1
        return i

    def _horizon(self):
        # every index >= horizon behaves the same way
        return max(self.items, default=-1) + 1

    def issubset(self, other: LevelSet) -> bool:
        if self.finite:
            return all(i in other for i in self.items)
        if other.finite:
            return False
        return other.items <= self.items

    def isdisjoint(self, other: LevelSet) -> bool:
        return self.intersection(other).is_empty()

    def complement(self):
        return LevelSet(self.items, not self.finite)

    def union(self, other):
        if self.finite and other.finite:
            return LevelSet(self.items | other.items, True)
        if not self.finite and not other.finite:
            return LevelSet(self.items & other.items, False)
        fin, cof = (self, other) if self.finite else (other, self)
        return LevelSet(cof.items - fin.items, False)

    def intersection(self, other):
        return self.complement().union(other.complement()).complement()

    def difference(self, other):
        return self.intersection(other.complement())

    def shift(self, s):
        """{i + s} restricted to indices >= 0."""
        if self.finite:
            return LevelSet(frozenset(i + s for i in self.items if i + s >= 0), True)
        excl = {i + s for i in self.items if i + s >= 0}
        excl |= set(range(max(s, 0)))
        return LevelSet(frozenset(excl), False)

    def scale(self, k):
        """A superset of {k * i}; exact for finite sets."""
        if k == 1:
            return self
        if self.finite:
            return LevelSet(frozenset(k * i for i in self.items), True)
        return LevelSet.at_least(k * self.min())

    def sumset(self, other):
        if self.is_empty() or other.is_empty():
            return LevelSet.empty()
        if self.finite and other.finite:
            return LevelSet(frozenset(a + b for a in self.items for b in other.items), True)
        # one side cofinite: the sum contains every index past the two horizons
        h = self._horizon() + other._horizon() + 1
        lo_a = range(h + 1) if not self.finite else self.items
        lo_b = range(h + 1) if not other.finite else other.items
        hit = {a + b for a in lo_a if a in self for b in lo_b if b in other}
        return LevelSet(frozenset(i for i in range(h + 1) if i not in hit), False)

    def nfold(self, n):
        out = LevelSet.of(0)
        for _ in range(n):
            out = out.sumset(self)
        return out

    def finite_items(self):
        return sorted(self.items) if self.finite else None

    def __str__(self):
        if self.finite:
            return "{" + ",".join(map(str, sorted(self.items))) + "}"
        if not self.items:
            return "N0"
        return "N0-{" + ",".join(map(str, sorted(self.items))) + "}"
