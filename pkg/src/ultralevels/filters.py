"""Finite filter bases standing in for ultrafilters on N.

A ``FilterBase`` is a finite tuple of lazy generator sets with the finite
intersection property. With ``free=True`` it also stands for every cofinite
set, i.e. for a nonprincipal ultrafilter extending the generators; such a base
carries a certified infinite ``core`` that lies inside every generator and in
the generated filter.

Membership, tilde-divisibility and level questions return three-valued
verdicts (see ``ultralevels.verdict``). ``Proven`` always cites a rule;
``Refuted`` always carries a concrete integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .arith import factorize, is_prime, omega
from .errors import DisjointnessUnsatisfiable, DomainError, FIPViolation
from .setlang.rules import (
    FINITE_LIMIT,
    finite_exceptions,
    finite_meet,
    negative_reliable,
    prove_disjoint,
    prove_subset,
)
from .setlang.terms import (
    SELECTORS,
    Complement,
    Diagonal,
    DistinctProducts,
    Finite,
    Image,
    Intersection,
    Level,
    PowerProducts,
    Powers,
    PrimeClass,
    Primes,
    ProductUnion,
    Scale,
    SetDescriptor,
    Tail,
    UpClosure,
)
from .verdict import ConsistentUpTo, Proven, Refuted, Verdict, merge

DEFAULT_BOUND = 10_000
_SEARCH_CAP = 10**15
_DENSE_CAP = 10**7
_NTH_SCAN = 4096


@dataclass(frozen=True)
class FilterBase:
    gens: tuple[SetDescriptor, ...]
    free: bool = False
    fip_bound: int = field(default=DEFAULT_BOUND, compare=False)
    witness: int | None = field(default=None, compare=False)
    core: SetDescriptor | None = field(default=None, compare=False, repr=False)
    # provenance, used by the symbolic tilde-divisibility rules
    factors: tuple | None = field(default=None, compare=False, repr=False)
    origin: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def meet(self) -> SetDescriptor:
        return self.gens[0] if len(self.gens) == 1 else Intersection(*self.gens)

    @property
    def point(self) -> int | None:
        """n when this is principal(n)."""
        if len(self.gens) == 1 and isinstance(self.gens[0], Finite) and len(self.gens[0].elems) == 1:
            return self.gens[0].elems[0]
        return None

    def members(self, bound: int) -> list[int]:
        """Members of the generator intersection up to `bound`."""
        return self.meet.enumerate(bound)

    def __str__(self):
        if self.point is not None:
            return f"principal:{self.point}"
        tag = "free" if self.free else "base"
        return f"{tag}(" + "; ".join(str(g) for g in self.gens) + ")"


def _first_member(d: SetDescriptor, start: int, above: int = 0, reject=None) -> int | None:
    """Smallest member of d greater than `above` (and not rejected), searching
    ever larger ranges; None when nothing turns up below the cap."""
    if d.nth(0) is not None:
        for k in range(_NTH_SCAN):
            e = d.nth(k)
            if e is None:
                break
            if e > above and (reject is None or not reject(e)):
                return e
    bound = max(start, above + 1, 2)
    cap = _DENSE_CAP if d.dense else _SEARCH_CAP
    while True:
        for e in d.iter_upto(min(bound, cap)):
            if e > above and (reject is None or not reject(e)):
                return e
        if bound >= cap or (d.upper is not None and bound >= d.upper):
            return None
        bound *= 16


def _certify_core(gens, core, trusted):
    if core is not None:
        if trusted or (core.infinite and all(core == g or prove_subset(core, g) for g in gens)):
            return core
        raise DomainError(f"core {core} is not certified inside every generator")
    cands = list(gens) + ([Intersection(*gens)] if len(gens) > 1 else [])
    for c in cands:
        if c.infinite and all(c == g or prove_subset(c, g) for g in gens):
            return c
    raise DomainError("a free base needs a certified infinite set inside every generator")


def _fip_failure(gens, bound):
    for r in range(1, len(gens) + 1):
        for sub in combinations(gens, r):
            d = sub[0] if r == 1 else Intersection(*sub)
            if d.first(bound) is None:
                return sub
    return tuple(gens)


def make_base(
    gens,
    fip_bound: int = DEFAULT_BOUND,
    free: bool = False,
    *,
    core: SetDescriptor | None = None,
    core_trusted: bool = False,
    witness: int | None = None,
    factors=None,
    origin=None,
) -> FilterBase:
    """Validate and build a base.

    FIP is checked by exhibiting one member of the intersection of all
    generators no larger than `fip_bound` (so every sub-intersection is
    nonempty too). A caller that already knows such a member passes it as
    `witness`. Raises ``FIPViolation`` naming a smallest failing subfamily.
    """
    gens = tuple(gens)
    if not gens:
        raise DomainError("a filter base needs at least one generator")
    if free:
        core = _certify_core(gens, core, core_trusted)
    if witness is None:
        meet = gens[0] if len(gens) == 1 else Intersection(*gens)
        witness = meet.first(fip_bound)
        if witness is None and free:
            witness = next(
                (e for e in core.iter_upto(fip_bound) if all(g.contains(e) for g in gens)), None
            )
        if witness is None:
            raise FIPViolation(_fip_failure(gens, fip_bound), fip_bound)
    return FilterBase(gens, free, max(fip_bound, witness), witness, core, factors, origin)


mk_base = make_base


def principal(n: int) -> FilterBase:
    if n < 1:
        raise DomainError("principal ultrafilters live on n >= 1")
    return FilterBase((Finite([n]),), False, n, n)


def tails(s: SetDescriptor, depth: int = 3, fip_bound: int = DEFAULT_BOUND) -> FilterBase:
    """The free base {Tail(s, k) : k < depth} of an infinite set s."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if not s.infinite:
        raise DomainError(f"{s} is not certified infinite")
    gens = [Tail(s, k) if k else s for k in range(depth)]
    return make_base(gens, fip_bound, True, core=gens[-1], core_trusted=True)


def free_base(gens, fip_bound: int = DEFAULT_BOUND) -> FilterBase:
    return make_base(gens, fip_bound, True)


def restrict(x: FilterBase, a: SetDescriptor, fip_bound: int | None = None) -> FilterBase:
    """x restricted to A: generators intersected with A."""
    gens = [Intersection(g, a) for g in x.gens]
    core = Intersection(x.core, a) if x.free and x.core is not None else None
    return make_base(gens, fip_bound or x.fip_bound, x.free and core is not None and core.infinite, core=core)


# ---------------------------------------------------------------- membership


def _candidates(x: FilterBase):
    out = list(x.gens)
    if len(out) > 1:
        out.append(x.meet)
    if x.core is not None and x.core not in out:
        out.append(x.core)
    return out


def contains(x: FilterBase, s: SetDescriptor, bound: int = DEFAULT_BOUND) -> Verdict:
    """Is S in the filter generated by x (plus all cofinite sets when x is free)?"""
    cands = _candidates(x)
    for g in cands:
        r = prove_subset(g, s)
        if r:
            return Proven(r)
    if x.free:
        for g in cands:
            ex = finite_exceptions(g, s)
            if ex is not None:
                return Proven("cofinite-removal", witness=ex)
        for g in cands:
            meet = finite_meet(g, s)
            if meet is not None:
                e = _first_member(g, bound, reject=s.contains)
                if e is not None:
                    return Refuted(e, "S meets a member of the filter in a finite set")
        return ConsistentUpTo(bound)
    g = x.meet
    if not negative_reliable(s):
        return ConsistentUpTo(bound)
    u = g.upper
    lim = bound
    if u is not None and u <= FINITE_LIMIT * 50 and not g.dense:
        lim = max(bound, u)
    for e in g.iter_upto(lim):
        if not s.contains(e):
            return Refuted(e, "member of the generator intersection outside S")
    if u is not None and lim >= u:
        return Proven("finite-exact")
    return ConsistentUpTo(bound)


# ---------------------------------------------------------------- operations


def product(x: FilterBase, y: FilterBase) -> FilterBase:
    """Base of x*y: all products B*C of generators (B from x, C from y)."""
    if x.point == 1:
        return y
    if y.point == 1:
        return x
    gens = [_times(b, c) for b in x.gens for c in y.gens]
    free = x.free or y.free
    core = None
    if free:
        core = _times(x.core if x.free else x.meet, y.core if y.free else y.meet)
    w = x.witness * y.witness
    if x.point is not None and y.point is not None:
        return principal(x.point * y.point)
    return make_base(
        gens,
        max(x.fip_bound, y.fip_bound, w),
        free,
        core=core,
        core_trusted=True,
        witness=w,
        factors=(x, y),
    )


def _times(b: SetDescriptor, c: SetDescriptor) -> SetDescriptor:
    """B*C, written as nC or nB when one side is a single point."""
    for one, other in ((b, c), (c, b)):
        if isinstance(one, Finite) and len(one.elems) == 1:
            n = one.elems[0]
            return other if n == 1 else Scale(n, other)
    return ProductUnion(b, c)


def _restrict_to_domain(f, b: SetDescriptor, free: bool):
    dom = f.domain
    if f.family == "pow" or prove_subset(b, dom):
        return b
    if free:
        ex = finite_exceptions(b, dom)
        if ex is not None:
            bad = [e for e in ex if b.contains(e)]
            if not bad:
                return b
            if (b.geometric is not None or _diagonal_offset(b) is not None) and all(
                b.nth(j) == e for j, e in enumerate(sorted(bad))
            ):
                return Tail(b, len(bad))
            return Intersection(b, Complement(Finite(bad)))
    if b.upper is not None and b.upper <= FINITE_LIMIT and not free:
        return None
    return None


def _diagonal_offset(b: SetDescriptor):
    """(selector, k) when b is Diagonal(selector) with its first k terms removed."""
    skip = 0
    while isinstance(b, Tail):
        skip += b.k
        b = b.base
    return (SELECTORS[b.selector], skip) if isinstance(b, Diagonal) else None


def _image(f, b: SetDescriptor, free: bool) -> SetDescriptor:
    if free and f.family == "sf" and b.geometric is not None:
        t0, v = f.eventual_value(*b.geometric)
        return Finite([v])
    diag = _diagonal_offset(b) if free and f.family == "sf" else None
    if diag is not None and diag[0].prefix_chain:
        sel, skip = diag
        return Finite([f(sel.fn(max(f.param, skip)))])
    if f.family == "sf" and b.profile.issubset(Level(f.param).profile):
        return b  # sf(k) is the identity on level k
    img = Image(f, b)
    r = img.reduced
    return r if r is not None else img


def pushforward(f, x: FilterBase, bound: int = DEFAULT_BOUND) -> FilterBase:
    """Base of f~(x) = {S : f^-1(S) in x} for a named map f.

    Every generator is first cut down to f's domain. When x is free, finitely
    many out-of-domain points may be dropped; for sf(k) on geometric generators
    the eventually constant value is taken, which collapses to a principal base.
    """
    restricted = [_restrict_to_domain(f, b, x.free) for b in x.gens]
    if any(r is None for r in restricted):
        pool = [c for c in (x.meet, x.core) if c is not None]
        restricted = [r for r in (_restrict_to_domain(f, c, x.free) for c in pool) if r is not None][:1]
        if not restricted:
            raise DomainError(f"{f} is not defined on any set of {x}")
    core = None
    if x.free and x.core is not None:
        core = _restrict_to_domain(f, x.core, True)
    images = [_image(f, r, x.free) for r in restricted]
    for im in images:
        if isinstance(im, Finite) and len(im.elems) == 1:
            return _with_origin(principal(im.elems[0]), (f, x))
    pool = restricted + ([core] if core is not None else [])
    src = pool[0] if len(pool) == 1 else Intersection(*pool)
    if x.witness is not None and all(r.contains(x.witness) for r in pool):
        w = x.witness
    else:
        w = _first_member(src, x.fip_bound)
        if w is None:
            raise DomainError(f"no point of {x} found in the domain of {f}")
    fw = f(w)
    free = False
    img_core = None
    if x.free and f.finite_to_one and core is not None:
        img_core = _image(f, core, True)
        free = img_core.infinite
    return make_base(
        images,
        max(bound, fw),
        free,
        core=img_core if free else None,
        core_trusted=True,
        witness=fw,
        origin=(f, x),
    )


def _with_origin(b: FilterBase, origin) -> FilterBase:
    return FilterBase(b.gens, b.free, b.fip_bound, b.witness, b.core, b.factors, origin)


# ---------------------------------------------------------------- tilde-divisibility


def _geometric_divides(gx, gy) -> bool:
    """Does every tail of {c r^t} have a multiple-closure containing a tail of {c' r'^u}?"""
    c, r, _ = gx
    c2, r2, _ = gy
    fr, fc, fc2, fr2 = (dict(factorize(v).factors) for v in (r, c, c2, r2))
    if any(q not in fr2 for q in fr):
        return False
    return all(q in fr2 or e <= fc2.get(q, 0) for q, e in fc.items() if q not in fr)


def _symbolic(x: FilterBase, y: FilterBase, bound, depth=0):
    if x == y:
        return "reflexivity"
    if depth > 4:
        return None
    if x.origin is not None:
        f, z = x.origin
        if f.kind == "factor" and (z == y or _symbolic(z, y, bound, depth + 1)):
            return "factor-pushforward"
    if y.origin is not None:
        f, z = y.origin
        if f.kind == "multiple" and (x == z or _symbolic(x, z, bound, depth + 1)):
            return "multiple-pushforward"
    if x.origin is not None and y.origin is not None:
        (f, z), (g, z2) = x.origin, y.origin
        if z == z2 and f.family == g.family == "sf" and f.param <= g.param:
            return "factor-chain"
    if y.factors is not None:
        for part in y.factors:
            if x == part or _symbolic(x, part, bound, depth + 1):
                return "product-factor"
    return None


def tilde_divides(x: FilterBase, y: FilterBase, bound: int = DEFAULT_BOUND) -> Verdict:
    """x ~| y: every A in x has its multiple-closure A^ in y."""
    rule = _symbolic(x, y, bound)
    if rule:
        return Proven(rule)
    checks = [contains(y, UpClosure(a), bound) for a in x.gens]
    if len(x.gens) > 1:
        checks.append(contains(y, UpClosure(x.meet), bound))
    refuted = [v for v in checks if isinstance(v, Refuted)]
    if refuted:
        return merge(refuted)
    if not x.free:
        return merge(checks)
    if not y.free:
        return Refuted(y.witness, "x is free and y is not: a cofinite member of x misses every divisor of it")
    gx, gy = x.core.geometric, y.core.geometric
    if gx is not None and gy is not None:
        if _geometric_divides(gx, gy):
            return Proven("geometric-divisibility")
        e = y.core.nth(0)
        return Refuted(e, "geometric cores: a tail of x has no divisor of this y-core point")
    if prove_subset(y.core, x.meet) or any(prove_subset(y.core, g) for g in x.gens):
        return Proven("free-refinement")
    return merge([ConsistentUpTo(bound)] + checks)


# ---------------------------------------------------------------- levels


@dataclass(frozen=True)
class OnLevel:
    level: int
    verdict: Verdict

    kind = "OnLevel"

    def __str__(self):
        return f"OnLevel({self.level}, {self.verdict})"


@dataclass(frozen=True)
class NotOnFiniteLevels:
    checked_up_to: int
    verdicts: tuple

    kind = "NotOnFiniteLevels"

    def __str__(self):
        return f"NotOnFiniteLevels(checked_up_to={self.checked_up_to})"


@dataclass(frozen=True)
class Unknown:
    kind = "Unknown"

    def __str__(self):
        return "Unknown"


def level_evidence(x: FilterBase, max_level: int = 50, bound: int = DEFAULT_BOUND):
    """Which level of the Omega partition x sits on, as far as can be told.

    A level that is only ConsistentUpTo counts when leaving it is refuted.
    If some level and its complement are both still open, x could be
    extended either way and the answer is Unknown.
    """
    outs = []
    open_levels = False
    for i in range(max_level + 1):
        v = contains(x, Level(i), bound)
        if isinstance(v, Proven):
            return OnLevel(i, v)
        out = contains(x, Complement(Level(i)), bound)
        if isinstance(v, ConsistentUpTo):
            if isinstance(out, Refuted):
                return OnLevel(i, v)
            open_levels = True
        outs.append(out)
    if open_levels or any(isinstance(v, Refuted) for v in outs):
        return Unknown()
    return NotOnFiniteLevels(max_level, tuple(outs))


# ---------------------------------------------------------------- F_alpha


@dataclass(frozen=True)
class Alpha:
    """A finite formal sum of (basic, k, multiplicity) with k >= 1.

    A basic is a prime number or a FilterBase concentrated on the primes.
    Entries with the same (basic, k) are merged; first-appearance order is kept.
    """

    entries: tuple

    def __init__(self, entries):
        merged: dict = {}
        for basic, k, mult in entries:
            if isinstance(basic, int) and not is_prime(basic):
                raise DomainError(f"basic {basic} is not prime")
            if isinstance(basic, FilterBase) and basic.point is not None:
                if not is_prime(basic.point):
                    raise DomainError(f"basic {basic} is not on the primes")
                basic = basic.point
            if k < 1 or mult < 1:
                raise DomainError("exponent and multiplicity must be >= 1")
            merged[(basic, k)] = merged.get((basic, k), 0) + mult
        object.__setattr__(self, "entries", tuple((b, k, m) for (b, k), m in merged.items()))

    @property
    def sigma(self) -> int:
        return sum(k * m for _, k, m in self.entries)

    def basics(self):
        out = []
        for b, _, _ in self.entries:
            if b not in out:
                out.append(b)
        return out

    def __str__(self):
        def show(b):
            return str(b) if isinstance(b, int) else f"[{b}]"

        return " + ".join(f"{m}*{show(b)}^{k}" for b, k, m in self.entries) or "0"


def add_alpha(a: Alpha, b: Alpha) -> Alpha:
    return Alpha(a.entries + b.entries)


def _basic_set(b) -> tuple[SetDescriptor, bool]:
    if isinstance(b, int):
        return Finite([b]), False
    if isinstance(contains(b, Primes()), Refuted):
        raise DomainError(f"basic {b} is not concentrated on the primes")
    d = b.core if b.free else b.meet
    if not prove_subset(d, Primes()):
        d = Intersection(d, Primes())
    return d, b.free


_SPLIT_PROBE = 10**5


def _disjoint_sets(basics, need):
    sets = [_basic_set(b) for b in basics]
    finite = [i for i, (d, _) in enumerate(sets) if d.upper is not None]
    infinite = [i for i in range(len(sets)) if i not in finite]
    for i, j in combinations(finite, 2):
        di, dj = sets[i][0], sets[j][0]
        if not prove_disjoint(di, dj) and set(di.iter_upto(di.upper)) & set(dj.iter_upto(dj.upper)):
            raise DisjointnessUnsatisfiable(f"finite basics {basics[i]} and {basics[j]} overlap")
    taken = sorted({e for i in finite for e in sets[i][0].iter_upto(sets[i][0].upper)})
    out = [d for d, _ in sets]
    for i in infinite:
        if taken and any(out[i].contains(e) for e in taken):
            out[i] = Intersection(out[i], Complement(Finite(taken)))
    clash = [i for i, j in combinations(infinite, 2) if not prove_disjoint(out[i], out[j])]
    if clash:
        out = _split_by_class(out, infinite, need)
    return out


def _split_by_class(out, infinite, need):
    """Give each infinite basic its own residue class of prime indices, trying
    moduli m, 2m, ... and the assignments of classes in turn until every
    restricted set still has enough members to be plausible."""
    m0 = len(infinite)
    for m in (m0, 2 * m0, 3 * m0):
        for classes in permutations(range(m), m0):
            trial = list(out)
            for r, i in zip(classes, infinite):
                trial[i] = Intersection(PrimeClass(r, m), out[i])
            if all(
                len(trial[i].enumerate_first(need[i] + 2, cap=_SPLIT_PROBE) or ()) >= need[i] + 2
                for i in infinite
            ):
                return trial
    raise DisjointnessUnsatisfiable("no residue split keeps every infinite basic populated")


def _finitize(d: SetDescriptor) -> SetDescriptor:
    u = d.upper
    if u is not None and u <= 10**9 and not isinstance(d, Finite):
        return Finite(d.iter_upto(u))
    return d


def _f_alpha_parts(alpha: Alpha):
    basics = alpha.basics()
    need = [sum(m for bb, _, m in alpha.entries if bb == b) for b in basics]
    sets = _disjoint_sets(basics, need)
    parts, sample = [], 1
    for b, d, n in zip(basics, sets, need):
        blocks = sorted(((k, m) for bb, k, m in alpha.entries if bb == b), reverse=True)
        if len(blocks) == 1:
            k, m = blocks[0]
            part = Powers(d, k) if k > 1 else d
            if m > 1:
                part = DistinctProducts(part, m)
        else:
            part = PowerProducts(d, tuple(blocks))
        parts.append(_finitize(part))
        firsts = d.enumerate_first(n, cap=_SPLIT_PROBE * 100)
        if sample is not None and firsts is not None and len(firsts) == n:
            it = iter(firsts)
            for k, m in blocks:
                for _ in range(m):
                    sample *= next(it) ** k
        else:
            sample = None
    return parts, sample


def f_alpha_set(alpha: Alpha) -> SetDescriptor:
    """One member of F_alpha, built from pairwise disjoint sets chosen for the basics."""
    if not alpha.entries:
        return Finite([1])
    parts, _ = _f_alpha_parts(alpha)
    out = parts[0]
    for p in parts[1:]:
        out = _finitize(ProductUnion(out, p))
    return out


def f_alpha(alpha: Alpha, fip_bound: int = 10**6) -> FilterBase:
    """Filter base generated by F_alpha; every member lies on level sigma(alpha).

    The FIP witness is assembled from the smallest members of the sets chosen
    for the basics. When some basic cannot supply enough distinct primes (a
    principal prime used with multiplicity 2, say) the search falls back to
    [1, fip_bound] and raises FIPViolation.
    """
    if not alpha.entries:
        return principal(1)
    parts, sample = _f_alpha_parts(alpha)
    gen = parts[0]
    for p in parts[1:]:
        gen = _finitize(ProductUnion(gen, p))
    free = any(isinstance(b, FilterBase) and b.free for b in alpha.basics())
    if sample is not None and not gen.contains(sample):
        sample = None
    return make_base(
        [gen],
        fip_bound,
        free and gen.infinite,
        core=gen if free else None,
        core_trusted=True,
        witness=sample,
    )


def sigma(alpha: Alpha) -> int:
    return alpha.sigma


def omega_of_members(x: FilterBase, bound: int) -> set[int]:
    return {omega(e) for e in x.members(bound)}
