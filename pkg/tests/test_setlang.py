import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import big_omega, is_prime
from ultralevels.errors import ParseError
from ultralevels.setlang import (
    Complement,
    Diagonal,
    DistinctProducts,
    DownClosure,
    Finite,
    GeomTimes,
    Intersection,
    Level,
    MultiplesOf,
    Powers,
    PrimeClass,
    Primes,
    ProductUnion,
    Quotient,
    Scale,
    Tail,
    Union,
    UpClosure,
    down_closure,
    enumerate_set,
    finite_exceptions,
    finite_meet,
    is_upward_closed,
    member,
    parse_set,
    product_union,
    prove_disjoint,
    prove_subset,
    quotient,
    register_selector,
    render,
    up_closure,
)
from ultralevels.verdict import Proven, Refuted

N = 400


# ---------------------------------------------------------------- examples


def test_member_examples():
    assert member(GeomTimes(3, 2), 12)
    assert member(Level(0), 1)
    assert not member(UpClosure(Finite([4])), 6)
    with pytest.raises(ValueError):
        member(Level(1), 0)


def test_enumerate_examples():
    assert enumerate_set(Quotient(Level(3), 2), 20) == [4, 6, 9, 10, 14, 15]
    assert enumerate_set(DistinctProducts(Finite([2, 3, 5]), 2), 20) == [6, 10, 15]
    assert enumerate_set(Diagonal("pow2"), 10) == [1, 2, 4, 8]
    assert enumerate_set(Level(1), 0) == []


def test_quotient_examples():
    assert member(quotient(Level(2), 3), 5)
    q = quotient(Finite([6]), 4)
    assert all(not member(q, m) for m in range(1, 200))
    assert quotient(Level(4), 1) == Level(4)


def test_closures():
    assert member(up_closure(Finite([2])), 6)
    d = down_closure(Finite([12]))
    assert enumerate_set(d, 20) == [1, 2, 3, 4, 6, 12]


def test_product_union_definition():
    pu = product_union(Finite([2, 3]), Level(1))
    want = sorted({b * c for b in (2, 3) for c in range(2, N) if is_prime(c) and b * c <= N})
    assert enumerate_set(pu, N) == want


def test_is_upward_closed_examples():
    assert isinstance(is_upward_closed(UpClosure(Finite([3])), 100), Proven)
    assert is_upward_closed(Finite([2, 4]), 8) == Refuted(6)
    assert is_upward_closed(Level(2), 100) == Refuted(8)


# ---------------------------------------------------------------- brute-force agreement


def brute(pred):
    return [n for n in range(1, N + 1) if pred(n)]


ORACLE_CASES = [
    (Primes(), is_prime),
    (Level(3), lambda n: big_omega(n) == 3),
    (MultiplesOf(6), lambda n: n % 6 == 0),
    (GeomTimes(3, 2), lambda n: n % 3 == 0 and (n // 3) & (n // 3 - 1) == 0 and n >= 6),
    (Powers(Primes(), 2), lambda n: is_prime(round(n**0.5)) and round(n**0.5) ** 2 == n),
    # index in the prime sequence, not residue of the prime itself
    (PrimeClass(1, 4), lambda n: is_prime(n) and sum(is_prime(q) for q in range(2, n)) % 4 == 1),
    (UpClosure(Finite([4, 9])), lambda n: n % 4 == 0 or n % 9 == 0),
    (Complement(Union(Level(0), Level(1))), lambda n: big_omega(n) >= 2),
    (Intersection(Level(2), MultiplesOf(3)), lambda n: big_omega(n) == 2 and n % 3 == 0),
    (Scale(5, Level(1)), lambda n: n % 5 == 0 and is_prime(n // 5)),
    (Tail(Diagonal("pow2"), 2), lambda n: n >= 4 and n & (n - 1) == 0),
    (Quotient(Level(2), 6), lambda n: big_omega(6 * n) == 2),
]


@pytest.mark.parametrize("s, pred", ORACLE_CASES, ids=lambda v: render(v) if not callable(v) else "")
def test_enumeration_matches_oracle(s, pred):
    assert enumerate_set(s, N) == brute(pred)


def test_levels_partition_small_range():
    for n in range(1, 2000):
        assert sum(member(Level(i), n) for i in range(15)) == 1


# ---------------------------------------------------------------- grammar round trip and agreement

leaves = st.one_of(
    st.just(Primes()),
    st.integers(0, 5).map(Level),
    st.lists(st.integers(1, 60), min_size=1, max_size=4).map(Finite),
    st.integers(1, 12).map(MultiplesOf),
    st.tuples(st.integers(1, 5), st.integers(2, 3)).map(lambda t: GeomTimes(*t)),
    st.sampled_from(["pow2", "primorial"]).map(Diagonal),
    st.tuples(st.sampled_from([1, 3]), st.just(4)).map(lambda t: PrimeClass(*t)),
)


def extend(children):
    return st.one_of(
        children.map(UpClosure),
        children.map(Complement),
        st.tuples(children, children).map(lambda t: Union(*t)),
        st.tuples(children, children).map(lambda t: Intersection(*t)),
        st.tuples(children, st.integers(1, 6)).map(lambda t: Quotient(*t)),
        st.tuples(children, st.integers(1, 3)).map(lambda t: Tail(*t)),
        st.tuples(st.integers(2, 6), children).map(lambda t: Scale(*t)),
        st.tuples(children, children).map(lambda t: ProductUnion(*t)),
    )


descriptors = st.recursive(leaves, extend, max_leaves=5)


@settings(max_examples=300, suppress_health_check=[HealthCheck.too_slow])
@given(descriptors)
def test_render_parse_round_trip(s):
    text = render(s)
    assert parse_set(text) == s
    assert render(parse_set(text)) == text


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(descriptors)
def test_membership_agrees_with_enumeration(s):
    got = enumerate_set(s, 150)
    assert got == sorted(set(got))
    assert got == [n for n in range(1, 151) if member(s, n)]


@settings(max_examples=100, deadline=None)
@given(descriptors)
def test_de_morgan_elementwise(s):
    t = Level(2)
    lhs = Complement(Union(s, t))
    rhs = Intersection(Complement(s), Complement(t))
    assert all(member(lhs, n) == member(rhs, n) for n in range(1, 120))


@settings(max_examples=80, deadline=None)
@given(descriptors)
def test_closures_contain_and_are_idempotent(s):
    up = UpClosure(s)
    down = DownClosure(s, 200)
    for n in range(1, 80):
        if member(s, n):
            assert member(up, n) and member(down, n)
        assert member(UpClosure(up), n) == member(up, n)


# ---------------------------------------------------------------- symbolic rules are sound


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(descriptors, descriptors)
def test_symbolic_rules_never_contradict_data(a, b):
    sample = range(1, 200)
    if prove_subset(a, b):
        assert all(member(b, n) for n in sample if member(a, n))
    if prove_disjoint(a, b):
        assert not any(member(a, n) and member(b, n) for n in sample)
    meet = finite_meet(a, b)
    if meet is not None:
        assert {n for n in sample if member(a, n) and member(b, n)} <= set(meet)
    ex = finite_exceptions(a, b)
    if ex is not None:
        assert {n for n in sample if member(a, n) and not member(b, n)} <= set(ex)


def test_diagonal_meets_each_level_once():
    for i in range(12):
        assert finite_meet(Diagonal("pow2"), Level(i)) == (2**i,)


# ---------------------------------------------------------------- errors and selectors


@pytest.mark.parametrize("text", ["level(", "levels(3)", "finite(1,)", "geom(3)", "img(sf(x),primes)", "diag(nope)", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_set(text)


def test_register_selector_validates():
    register_selector("pow3", lambda i: 3**i, geometric=(1, 3, 0), prefix_chain=True)
    assert enumerate_set(Diagonal("pow3"), 100) == [1, 3, 9, 27, 81]
    with pytest.raises(ValueError):
        register_selector("broken", lambda i: 2 * i + 1)
    with pytest.raises(ValueError):
        register_selector("notchain", lambda i: [1, 3, 6, 30, 210][i] if i < 5 else 210 * 11 ** (i - 4), check_upto=8, prefix_chain=True)
