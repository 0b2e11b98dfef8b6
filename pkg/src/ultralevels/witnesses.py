"""Arithmetic witness maps for tilde-divisibility and the chain/scale constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, prod

from .arith import divisors, factorize, omega
from .errors import DomainError, NoSuchWitness
from .setlang.levelset import LevelSet
from .setlang.terms import Complement, GeomTimes, Level, MultiplesOf, SetDescriptor, Union

FACTOR, MULTIPLE = "factor", "multiple"


def smallest_factor_in_level(n: int, k: int) -> int:
    """Least divisor d of n with omega(d) == k: the product of n's k smallest prime factors."""
    if k < 0:
        raise DomainError("level must be >= 0")
    ps = factorize(n).primes()
    if len(ps) < k:
        raise NoSuchWitness(f"omega({n}) = {len(ps)} < {k}")
    return prod(ps[:k])


def smallest_multiple_in_level(n: int, k: int) -> int:
    """Least multiple m of n with omega(m) == k, namely n * 2**(k - omega(n)).

    The closed form is checked against ``smallest_multiple_bruteforce`` by the
    test suite and by the pushforward-divides suite before that suite uses it.
    """
    w = omega(n)
    if w > k:
        raise NoSuchWitness(f"omega({n}) = {w} > {k}")
    return n << (k - w)


def smallest_multiple_bruteforce(n: int, k: int) -> int:
    if omega(n) > k:
        raise NoSuchWitness(f"omega({n}) > {k}")
    m = n
    while omega(m) != k:
        m += n
    return m


def three_two_map(m: int) -> int:
    """3 * 2**j  ->  2**j for j >= 1."""
    if m % 3 or m < 6:
        raise DomainError(f"{m} is not of the form 3*2^j, j >= 1")
    q = m // 3
    if q & (q - 1):
        raise DomainError(f"{m} is not of the form 3*2^j, j >= 1")
    return q


def _vals(n):
    return dict(factorize(n).factors)


@dataclass(frozen=True)
class NamedMap:
    """A registered map N -> N: sf(k), sm(k), pow(n) or threetwomap.

    ``kind`` is "factor" when f(a) | a on the domain and "multiple" when a | f(a).
    """

    family: str
    param: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown map family {self.family!r}")
        needs = self.family != "threetwomap"
        if needs != (self.param is not None):
            raise DomainError(f"bad parameter for {self.family}")
        if needs and self.param < (1 if self.family == "pow" else 0):
            raise DomainError(f"bad parameter for {self.family}: {self.param}")

    def __str__(self):
        return self.family if self.param is None else f"{self.family}({self.param})"

    def __call__(self, a: int) -> int:
        f, k = self.family, self.param
        if f == "sf":
            return smallest_factor_in_level(a, k)
        if f == "sm":
            return smallest_multiple_in_level(a, k)
        if f == "pow":
            return a**k
        return three_two_map(a)

    @property
    def kind(self):
        return _FAMILIES[self.family]

    @property
    def power(self):
        return self.param if self.family == "pow" else None

    @property
    def finite_to_one(self):
        return self.family != "sf"

    def defined(self, a: int) -> bool:
        f, k = self.family, self.param
        if f == "sf":
            return omega(a) >= k
        if f == "sm":
            return omega(a) <= k
        if f == "pow":
            return True
        return GeomTimes(3, 2).contains(a)

    @property
    def domain(self) -> SetDescriptor:
        f, k = self.family, self.param
        if f == "sf":
            return Complement(Union(*(Level(i) for i in range(k)))) if k else MultiplesOf(1)
        if f == "sm":
            return Union(*(Level(i) for i in range(k + 1)))
        if f == "pow":
            return MultiplesOf(1)
        return GeomTimes(3, 2)

    def preimages(self, m: int):
        """All a with f(a) == m, or None when that set may be infinite."""
        f, k = self.family, self.param
        if f == "sf":
            return None
        if f == "pow":
            from sympy import integer_nthroot

            r, exact = integer_nthroot(m, k)
            return [int(r)] if exact else []
        if f == "threetwomap":
            return [3 * m] if m >= 2 and not m & (m - 1) else []
        if omega(m) != k:
            return []
        return [d for d in divisors(m) if omega(d) <= k and self(d) == m]

    def geometric_image(self, c: int, r: int, s: int):
        """(c', r', s') with f(c*r**t) == c'*r'**t for t >= s, when f is defined there."""
        f = self.family
        if f == "pow":
            return (c**self.param, r**self.param, s)
        if f == "threetwomap" and r == 2 and c % 3 == 0:
            q = c // 3
            if q & (q - 1) == 0 and q * 2**s >= 2:
                return (q, 2, s)
        return None

    def eventual_value(self, c: int, r: int, s: int):
        """(t0, v): f(c*r**t) == v for every t >= t0 >= s (sf maps only)."""
        if self.family != "sf":
            return None
        k = self.param
        vc, vr = _vals(c), _vals(r)
        t0 = s
        for q, e in vr.items():
            t0 = max(t0, ceil((k - vc.get(q, 0)) / e))
        step, base = omega(r), omega(c)
        if base + t0 * step < k:
            t0 = max(t0, ceil((k - base) / step))
        return t0, self(c * r**t0)

    def image_profile(self, levels: LevelSet) -> LevelSet:
        f, k = self.family, self.param
        if f in ("sf", "sm"):
            return LevelSet.of(k)
        if f == "pow":
            return levels.scale(k)
        return levels.shift(-1)


_FAMILIES = {"sf": FACTOR, "sm": MULTIPLE, "pow": MULTIPLE, "threetwomap": FACTOR}


def sf(k):
    return NamedMap("sf", k)


def sm(k):
    return NamedMap("sm", k)


def pow_map(n):
    return NamedMap("pow", n)


THREE_TWO = NamedMap("threetwomap")

smallest_factor_to_level = sf
smallest_multiple_to_level = sm


def check_map_kind(f: NamedMap, sample) -> list[int]:
    """Domain points in `sample` where f breaks its declared divisibility direction."""
    bad = []
    for a in sample:
        if not f.defined(a):
            continue
        v = f(a)
        ok = a % v == 0 if f.kind == FACTOR else v % a == 0
        if not ok:
            bad.append(a)
    return bad


def chain(x, bound: int = 10_000, length: int = 8, max_level: int = 50):
    """[x_1, ..., x_{n-1}, x] with x_k the pushforward of x along sf(k).

    For x on level n the chain has n entries; for bases with evidence of lying
    on no finite level it has ``length`` + 1 entries.
    """
    from .filters import NotOnFiniteLevels, OnLevel, level_evidence, pushforward

    ev = level_evidence(x, max_level, bound)
    if isinstance(ev, OnLevel):
        if ev.level < 1:
            raise DomainError("chains start from level 1; x is on level 0")
        top = ev.level
    elif isinstance(ev, NotOnFiniteLevels):
        top = length + 1
    else:
        raise DomainError("no level evidence for x; cannot build a chain")
    return [pushforward(sf(k), x) for k in range(1, top)] + [x]


def scale(n: int, x):
    """principal(n) * x; n tilde-divides the result."""
    from .filters import principal, product

    return product(principal(n), x)


@dataclass
class MultipleWitnessSet:
    """The set A = {m_n, m_{n+1}, ...} with m_j on level j, and f(e) = least multiple of e in A."""

    level: int
    sources: list[int]
    members: list[int]
    assignment: dict[int, int]
    collisions: list[tuple[int, int]] = field(default_factory=list)
    injectivity_violations: list[tuple[int, int, int]] = field(default_factory=list)


def multiple_witness_set(level: int, count: int) -> MultipleWitnessSet:
    """Build A from the first `count` members e_j of L_level: m_{level+j} is the
    least multiple of e_j on level level+j. Collisions take the next multiple on
    that level; the least-multiple-in-A map is then checked for injectivity."""
    if level < 1 or count < 1:
        raise DomainError("need level >= 1 and count >= 1")
    sources = []
    probe = 2
    while len(sources) < count:
        if omega(probe) == level:
            sources.append(probe)
        probe += 1
    members, collisions, taken = [], [], set()
    for j, e in enumerate(sources):
        target = level + j
        m = smallest_multiple_in_level(e, target)
        while m in taken:
            collisions.append((e, m))
            m += e
            while omega(m) != target:
                m += e
        taken.add(m)
        members.append(m)
    ordered = sorted(members)
    assignment = {e: next(a for a in ordered if a % e == 0) for e in sources}
    seen, violations = {}, []
    for e in sources:
        a = assignment[e]
        if a in seen:
            violations.append((seen[a], e, a))
        else:
            seen[a] = e
    return MultipleWitnessSet(level, sources, members, assignment, collisions, violations)
