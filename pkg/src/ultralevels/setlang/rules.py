"""Symbolic containment and disjointness proofs between set descriptors.

``prove_subset`` and ``prove_disjoint`` return the name of the rule that
established the claim, or None. They never enumerate an infinite set. The
``*_exceptions`` helpers certify that a difference or meet is finite and list a
finite superset of it; filters over free bases rely on them.
"""

from __future__ import annotations

from math import gcd

from ..arith import factorize
from ..verdict import ConsistentUpTo, Proven, Refuted
from .terms import (
    Complement,
    DistinctProducts,
    DownClosure,
    Finite,
    Image,
    Intersection,
    Level,
    MultiplesOf,
    PowerProducts,
    Powers,
    PrimeClass,
    ProductUnion,
    Quotient,
    Scale,
    SetDescriptor,
    Tail,
    Union,
    UpClosure,
)

FINITE_LIMIT = 200_000
CHAIN_SCAN = 256
_MAX_DEPTH = 12


def _inexact_nodes(s: SetDescriptor, negated=False):
    """Yield (node, negated) for nodes whose membership may be a bounded guess."""
    if isinstance(s, DownClosure) and s.base.upper is None and s._shortcut(2) is None:
        yield s, negated
    if isinstance(s, Image) and s.reduced is None:
        yield s, negated
    for c in s.children:
        yield from _inexact_nodes(c, negated ^ isinstance(s, Complement))


def exact(s: SetDescriptor) -> bool:
    return next(_inexact_nodes(s), None) is None


def positive_reliable(s: SetDescriptor) -> bool:
    """A True from contains() is certain (bounded searches only under even negation)."""
    return all(not neg for _, neg in _inexact_nodes(s))


def negative_reliable(s: SetDescriptor) -> bool:
    return all(neg for _, neg in _inexact_nodes(s))


def _up_basis(s):
    if isinstance(s, UpClosure):
        return s.base
    if isinstance(s, MultiplesOf):
        return Finite((s.n,))
    return None


def is_up_closed_term(s) -> bool:
    if isinstance(s, (UpClosure, MultiplesOf)):
        return True
    if isinstance(s, (Union, Intersection)):
        return all(is_up_closed_term(p) for p in s.parts)
    return False


def prove_subset(a: SetDescriptor, s: SetDescriptor, depth: int = 0) -> str | None:
    if depth > _MAX_DEPTH:
        return None
    d = depth + 1
    if a == s:
        return "reflexivity"
    if a.upper == 0:
        return "empty"
    if a.upper is not None and a.upper <= FINITE_LIMIT and positive_reliable(s):
        if all(s.contains(x) for x in a.iter_upto(a.upper)):
            return "finite-exact"
        return None
    if isinstance(a, Finite) and positive_reliable(s):
        return "finite-exact" if all(s.contains(x) for x in a.elems) else None
    if a.profile.issubset(s.covered):
        return "level-profile"
    if isinstance(a, Image) and a.reduced is not None:
        return prove_subset(a.reduced, s, d)
    if isinstance(s, Image) and s.reduced is not None:
        r = prove_subset(a, s.reduced, d)
        if r:
            return r
    if isinstance(a, Quotient) and a.rewritten() is not None:
        return prove_subset(a.rewritten(), s, d)
    if isinstance(s, Quotient):
        if s.rewritten() is not None:
            return prove_subset(a, s.rewritten(), d)
        r = prove_subset(Scale(s.n, a), s.base, d)
        return f"quotient-rewrite({r})" if r else None
    if isinstance(s, Intersection):
        rs = [prove_subset(a, p, d) for p in s.parts]
        return "intersection(" + ",".join(rs) + ")" if all(rs) else None
    if isinstance(a, Union):
        rs = [prove_subset(p, s, d) for p in a.parts]
        return "union-cases(" + ",".join(rs) + ")" if all(rs) else None
    if isinstance(s, Union):
        for p in s.parts:
            r = prove_subset(a, p, d)
            if r:
                return f"union-monotone({r})"
    if isinstance(a, Intersection):
        for p in a.parts:
            r = prove_subset(p, s, d)
            if r:
                return f"intersection-monotone({r})"
    ga, gs = a.geometric, s.geometric
    if ga and gs and ga[:2] == gs[:2] and ga[2] >= gs[2]:
        return "geometric-tail"
    if isinstance(s, Tail) and isinstance(a, Tail) and a.base == s.base and a.k >= s.k:
        return "tail-order"
    if isinstance(a, Tail):
        r = prove_subset(a.base, s, d)
        if r:
            return f"tail-monotone({r})"
    if isinstance(a, PrimeClass) and isinstance(s, PrimeClass):
        if a.m % s.m == 0 and a.r % s.m == s.r:
            return "prime-class"
    basis = _up_basis(s)
    if basis is not None:
        r = _subset_up(a, basis, s, d)
        if r:
            return r
    if isinstance(s, Complement):
        r = prove_disjoint(a, s.base, d)
        return f"disjoint({r})" if r else None
    if isinstance(s, DownClosure):
        r = prove_subset(a, s.base, d)
        if r:
            return f"down-closure-extensive({r})"
    if isinstance(s, Scale) and isinstance(a, Scale) and a.n == s.n:
        r = prove_subset(a.base, s.base, d)
        return f"scale-monotone({r})" if r else None
    if isinstance(s, Powers) and isinstance(a, Powers) and a.k == s.k:
        r = prove_subset(a.base, s.base, d)
        return f"power-monotone({r})" if r else None
    if isinstance(s, DistinctProducts) and isinstance(a, DistinctProducts) and a.n == s.n:
        r = prove_subset(a.base, s.base, d)
        return f"product-monotone({r})" if r else None
    if isinstance(s, ProductUnion) and isinstance(a, ProductUnion):
        r1 = prove_subset(a.left, s.left, d)
        r2 = r1 and prove_subset(a.right, s.right, d)
        if r1 and r2:
            return f"product-monotone({r1},{r2})"
    if isinstance(s, Image) and isinstance(a, Image) and a.fmap == s.fmap:
        r = prove_subset(a.base, s.base, d)
        return f"image-monotone({r})" if r else None
    return None


def _subset_up(a, basis, s, d):
    """a inside the upward closure s of basis."""
    r = prove_subset(a, basis, d)
    if r:
        return f"up-closure-extensive({r})"
    if isinstance(a, UpClosure):
        r = prove_subset(a.base, s, d)
        return f"up-closure-monotone({r})" if r else None
    if isinstance(a, MultiplesOf) and s.contains(a.n):
        return "multiples"
    if isinstance(a, (Powers, Scale, DistinctProducts, PowerProducts)):
        if isinstance(a, DistinctProducts) and a.n == 0:
            return None
        r = prove_subset(a.base, s, d)
        if r:
            return f"multiple-image({r})"
    if isinstance(a, Image) and a.fmap.kind == "multiple":
        r = prove_subset(a.base, s, d)
        if r:
            return f"multiple-image({r})"
    if isinstance(a, ProductUnion):
        for part in (a.left, a.right):
            r = prove_subset(part, s, d)
            if r:
                return f"product-factor({r})"
    if isinstance(basis, Image) and basis.fmap.kind == "factor":
        r = prove_subset(a, basis.base, d)
        if r:
            return f"factor-image({r})"
    g = a.geometric
    if g is not None and positive_reliable(s):
        c, ratio, start = g
        if s.contains(c * ratio**start):
            return "chain-upward"
    return None


def _support_disjoint(a: SetDescriptor, t: SetDescriptor) -> bool:
    """a geometric, t the multiples of a set of primes containing no prime of a's support."""
    g = a.geometric
    basis = _up_basis(t)
    if g is None or basis is None or not basis.profile.issubset(Level(1).profile):
        return False
    if not negative_reliable(basis):
        return False
    support = set(factorize(g[0]).primes()) | set(factorize(g[1]).primes())
    return not any(basis.contains(p) for p in support)


def _classes_disjoint(a, t) -> bool:
    if isinstance(a, PrimeClass) and isinstance(t, PrimeClass):
        return (a.r - t.r) % gcd(a.m, t.m) != 0
    return False


def prove_disjoint(a: SetDescriptor, t: SetDescriptor, depth: int = 0) -> str | None:
    if depth > _MAX_DEPTH:
        return None
    d = depth + 1
    if a.upper == 0 or t.upper == 0:
        return "empty"
    if a.profile.isdisjoint(t.profile):
        return "level-disjoint"
    if isinstance(t, Complement):
        r = prove_subset(a, t.base, d)
        return f"complement({r})" if r else None
    if isinstance(t, Union):
        rs = [prove_disjoint(a, p, d) for p in t.parts]
        return "union(" + ",".join(rs) + ")" if all(rs) else None
    if isinstance(a, Union):
        rs = [prove_disjoint(p, t, d) for p in a.parts]
        return "union(" + ",".join(rs) + ")" if all(rs) else None
    for x, y in ((a, t), (t, a)):
        if x.upper is not None and x.upper <= FINITE_LIMIT and negative_reliable(y):
            if not any(y.contains(e) for e in x.iter_upto(x.upper)):
                return "finite-exclusion"
            return None
    for x, y in ((a, t), (t, a)):
        if isinstance(x, (Intersection,)):
            for p in x.parts:
                r = prove_disjoint(p, y, d) if x is a else prove_disjoint(y, p, d)
                if r:
                    return f"intersection({r})"
        if isinstance(x, Tail):
            r = prove_disjoint(x.base, y, d)
            if r:
                return f"tail({r})"
    if _classes_disjoint(a, t):
        return "prime-classes"
    if _support_disjoint(a, t) or _support_disjoint(t, a):
        return "prime-support"
    meet = finite_meet(a, t)
    if meet == ():
        return "level-slices"
    return None


def finite_meet(a: SetDescriptor, t: SetDescriptor) -> tuple[int, ...] | None:
    """A finite tuple containing a & t, when that intersection is provably finite."""
    for x, y in ((a, t), (t, a)):
        if x.upper is not None and x.upper <= FINITE_LIMIT:
            return tuple(e for e in x.iter_upto(x.upper) if y.contains(e) or not negative_reliable(y))
    if isinstance(t, Complement):
        return finite_exceptions(a, t.base)
    if _support_disjoint(a, t) or _support_disjoint(t, a) or _classes_disjoint(a, t):
        return ()
    levels = a.profile.intersection(t.profile)
    if not levels.finite:
        return None
    out = set()
    for i in levels.items:
        sa = a.slice(i)
        if sa is None:
            sa = t.slice(i)
            if sa is None:
                return None
            out.update(e for e in sa if a.contains(e))
        else:
            out.update(e for e in sa if t.contains(e) or not negative_reliable(t))
    return tuple(sorted(out))


def finite_exceptions(a: SetDescriptor, s: SetDescriptor) -> tuple[int, ...] | None:
    """A finite tuple containing a - s, when that difference is provably finite."""
    if prove_subset(a, s):
        return ()
    if isinstance(s, Complement):
        return finite_meet(a, s.base)
    if isinstance(s, Intersection):
        out = set()
        for p in s.parts:
            e = finite_exceptions(a, p)
            if e is None:
                return None
            out.update(e)
        return tuple(sorted(out))
    if isinstance(s, Union):
        # a - s lies inside every a - p, so keep what all known bounds agree on
        found = [set(e) for e in (finite_exceptions(a, p) for p in s.parts) if e is not None]
        if found:
            return tuple(sorted(set.intersection(*found)))
    if isinstance(a, (Intersection,)):
        for p in a.parts:
            e = finite_exceptions(p, s)
            if e is not None:
                return tuple(x for x in e if a.contains(x))
    if isinstance(s, Tail):
        e = finite_exceptions(a, s.base)
        if e is not None:
            head = s.base.enumerate_first(s.k)
            if head is not None:
                return tuple(sorted(set(e) | {x for x in head if a.contains(x)}))
    if isinstance(a, Tail):
        e = finite_exceptions(a.base, s)
        if e is not None:
            return tuple(x for x in e if a.contains(x))
    g = a.geometric
    if g is not None and _up_basis(s) is not None and positive_reliable(s):
        c, r, start = g
        for t in range(start, start + CHAIN_SCAN):
            if s.contains(c * r**t):
                return tuple(c * r**j for j in range(start, t))
    levels = a.profile.difference(s.covered)
    if levels.finite:
        out = []
        for i in sorted(levels.items):
            sl = a.slice(i)
            if sl is None:
                return None
            out.extend(e for e in sl if not s.contains(e) or not positive_reliable(s))
        return tuple(sorted(out))
    return None


def is_upward_closed(s: SetDescriptor, bound: int):
    """Proven by rule for closure terms, Refuted with the smallest missing multiple."""
    if is_up_closed_term(s):
        return Proven("up-closed-term")
    if s.upper == 0:
        return Proven("empty")
    m = s.mask(bound)
    best = None
    for n in map(int, m.nonzero()[0]):
        if best is not None and 2 * n >= best:
            break
        mult = m[2 * n :: n]
        if not mult.all():
            cand = 2 * n + n * int((~mult).argmax())
            best = cand if best is None else min(best, cand)
    if best is not None:
        return Refuted(best)
    return ConsistentUpTo(bound)
