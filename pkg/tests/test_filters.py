import pytest

from oracles import big_omega
from ultralevels import filters as F
from ultralevels.checker import i_bases
from ultralevels.errors import DomainError, FIPViolation
from ultralevels.setlang import (
    Complement,
    Diagonal,
    Finite,
    GeomTimes,
    Level,
    MultiplesOf,
    PrimeClass,
    Primes,
    Tail,
    Union,
    UpClosure,
)
from ultralevels.verdict import ConsistentUpTo, Proven, Refuted, merge
from ultralevels.witnesses import THREE_TWO, pow_map, sf, sm


@pytest.fixture(scope="module")
def diag():
    return F.tails(Diagonal("pow2"))


# ---------------------------------------------------------------- construction


def test_singleton_generator_is_principal():
    x = F.mk_base([Finite([6])], 10)
    assert x == F.principal(6) and x.point == 6


def test_disjoint_generators_violate_fip():
    with pytest.raises(FIPViolation) as info:
        F.mk_base([Level(2), Complement(Level(2))], 10_000)
    assert len(info.value.gens) == 2


def test_nested_tails_form_a_base():
    x = F.mk_base([Tail(Diagonal("pow2"), k) for k in range(3)], 10_000)
    assert x.members(100) == [4, 8, 16, 32, 64]


def test_principal_rejects_zero():
    with pytest.raises(DomainError):
        F.principal(0)


def test_tails_need_an_infinite_set():
    with pytest.raises(DomainError):
        F.tails(Finite([1, 2, 3]))


def test_restriction():
    x = F.restrict(F.tails(Primes()), PrimeClass(0, 2))
    assert x.free and x.members(20) == [5, 11, 17]  # tails drop 2 and 3


# ---------------------------------------------------------------- membership


def test_contains_examples(diag):
    assert isinstance(F.contains(F.principal(6), MultiplesOf(2)), Proven)
    assert F.contains(F.principal(6), Level(3)) == Refuted(6)
    for i in range(0, 51):
        assert isinstance(F.contains(diag, Complement(Level(i))), Proven), i


def test_free_base_rejects_finite_sets(diag):
    assert isinstance(F.contains(diag, Finite([1, 2, 4, 8])), Refuted)
    assert isinstance(F.contains(diag, Level(5)), Refuted)


def test_merge_order():
    assert merge([Proven("a"), ConsistentUpTo(50), ConsistentUpTo(10)]) == ConsistentUpTo(10)
    assert merge([ConsistentUpTo(10), Refuted(4), Proven("a")]) == Refuted(4)
    assert isinstance(merge([Proven("a"), Proven("b")]), Proven)


# ---------------------------------------------------------------- products


def test_principal_product():
    z = F.product(F.principal(2), F.principal(3))
    assert isinstance(F.contains(z, Finite([6])), Proven)
    assert z == F.principal(6)


def test_product_of_level_one_bases_is_on_level_two():
    p = F.tails(Primes())
    ev = F.level_evidence(F.product(p, p))
    assert isinstance(ev, F.OnLevel) and ev.level == 2


@pytest.mark.parametrize("n", [1, 2, 12, 97])
def test_product_with_i_base_stays_off_levels(diag, n):
    for z in (F.product(diag, F.principal(n)), F.product(F.principal(n), diag)):
        assert isinstance(F.level_evidence(z), F.NotOnFiniteLevels)


def test_product_members_are_products():
    x, y = F.principal(4), F.tails(Primes())
    z = F.product(x, y)
    assert all(m % 4 == 0 and big_omega(m) == 3 for m in z.members(500))


# ---------------------------------------------------------------- pushforward


def test_pushforward_examples():
    img = F.pushforward(THREE_TWO, F.tails(GeomTimes(3, 2)))
    assert img.free and img.members(64) == [8, 16, 32, 64]
    assert F.pushforward(pow_map(2), F.principal(3)) == F.principal(9)
    assert F.pushforward(sf(1), F.principal(12)) == F.principal(2)


def test_pushforward_outside_domain():
    with pytest.raises(DomainError):
        F.pushforward(sf(4), F.principal(12))
    with pytest.raises(DomainError):
        F.pushforward(THREE_TWO, F.principal(10))


def test_sf_on_diagonal_collapses(diag):
    assert F.pushforward(sf(3), diag) == F.principal(8)


# ---------------------------------------------------------------- tilde divisibility


def test_tilde_divides_examples(diag):
    assert isinstance(F.tilde_divides(F.principal(2), F.principal(6)), Proven)
    assert F.tilde_divides(F.principal(4), F.principal(6)) == Refuted(6)
    for k in (1, 2, 5):
        assert isinstance(F.tilde_divides(F.pushforward(sf(k), diag), diag), Proven)


@pytest.mark.parametrize("a", [1, 2, 3, 4, 6, 12])
@pytest.mark.parametrize("b", [1, 6, 8, 12, 36])
def test_principal_divisibility_is_integer_divisibility(a, b):
    v = F.tilde_divides(F.principal(a), F.principal(b))
    assert isinstance(v, Proven) == (b % a == 0)
    assert isinstance(v, Refuted) == (b % a != 0)


def test_multiple_pushforward_is_divisible(diag):
    x = F.tails(Primes())
    assert not isinstance(F.tilde_divides(x, F.pushforward(sm(3), x)), Refuted)
    assert not isinstance(F.tilde_divides(diag, F.pushforward(pow_map(2), diag)), Refuted)


def test_free_never_divides_principal(diag):
    assert isinstance(F.tilde_divides(diag, F.principal(8)), Refuted)


# ---------------------------------------------------------------- level evidence


@pytest.mark.parametrize("n", [1, 2, 8, 30, 1024, 9699690])
def test_principal_evidence(n):
    ev = F.level_evidence(F.principal(n))
    assert isinstance(ev, F.OnLevel) and ev.level == big_omega(n)


def test_i_bases_have_evidence():
    for name, x in i_bases().items():
        ev = F.level_evidence(x, 50)
        assert isinstance(ev, F.NotOnFiniteLevels), name
        assert ev.checked_up_to == 50 and len(ev.verdicts) == 51


@pytest.mark.parametrize("free", [False, True])
def test_complement_of_low_levels_is_undetermined(free):
    x = F.make_base([Complement(Union(Level(0), Level(1), Level(2)))], free=free)
    assert isinstance(F.level_evidence(x), F.Unknown)
    for i in range(3):
        assert isinstance(F.contains(x, Level(i)), Refuted)


# ---------------------------------------------------------------- F_alpha


def test_alpha_examples():
    a = F.Alpha([(2, 2, 1)])
    assert a.sigma == 2 and F.f_alpha(a) == F.principal(4)
    b = F.Alpha([(F.make_base([Finite([2, 3, 5])]), 1, 2)])
    assert b.sigma == 2 and F.f_alpha(b).members(100) == [6, 10, 15]


def test_example_alpha_with_two_free_primes():
    p, q = F.tails(PrimeClass(0, 2)), F.tails(PrimeClass(1, 2))
    a = F.Alpha([(p, 3, 2), (q, 2, 2)])
    assert a.sigma == 10
    x = F.f_alpha(a)
    assert x.witness is not None and big_omega(x.witness) == 10
    assert F.omega_of_members(x, 10**7) <= {10}


def test_alpha_addition():
    a = F.Alpha([(3, 1, 1)])
    assert F.add_alpha(a, a) == F.Alpha([(3, 1, 2)])
    assert F.add_alpha(a, F.Alpha([])) == a
    third = F.Alpha([(2, 3, 2), (3, 2, 2)])
    assert F.add_alpha(third, third).sigma == 20


def test_alpha_rejects_non_primes():
    with pytest.raises(DomainError):
        F.Alpha([(4, 1, 1)])
    with pytest.raises(DomainError):
        F.Alpha([(2, 0, 1)])


def test_empty_alpha_is_identity():
    assert F.f_alpha(F.Alpha([])) == F.principal(1)


def test_up_closure_of_principal_member():
    x = F.principal(12)
    assert isinstance(F.contains(x, UpClosure(Finite([4]))), Proven)
