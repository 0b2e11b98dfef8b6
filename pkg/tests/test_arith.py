import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import big_omega, factor_pairs, partitions
from ultralevels import arith
from ultralevels.errors import DomainError


@pytest.mark.parametrize(
    "n, pairs",
    [(12, ((2, 2), (3, 1))), (1, ()), (27, ((3, 3),)), (97, ((97, 1),)), (2**20 * 3, ((2, 20), (3, 1)))],
)
def test_factorize_examples(n, pairs):
    assert arith.factorize(n).factors == pairs


@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_matches_trial_division(n):
    f = arith.factorize(n)
    assert list(f.factors) == factor_pairs(n)
    assert f.omega == big_omega(n)


def test_factorize_beyond_sieve_range():
    n = (2**31 - 1) * 3**2
    assert arith.factorize(n).factors == ((3, 2), (2**31 - 1, 1))
    assert arith.omega(n) == 3


@pytest.mark.parametrize("n, k", [(1, 0), (8, 3), (30, 3), (2, 1), (1024, 10)])
def test_omega_examples(n, k):
    assert arith.omega(n) == k


@pytest.mark.parametrize("bad", [0, -5])
def test_nonpositive_inputs_rejected(bad):
    with pytest.raises(DomainError):
        arith.omega(bad)
    with pytest.raises(DomainError):
        arith.factorize(bad)


@pytest.mark.parametrize("n, sig", [(8, (3,)), (12, (2, 1)), (30, (1, 1, 1)), (360, (3, 2, 1))])
def test_signature_examples(n, sig):
    assert arith.signature(n).exponents == sig


def test_signature_needs_n_above_one():
    with pytest.raises(DomainError):
        arith.signature(1)


def test_signature_classes_level_three():
    assert [c.exponents for c in arith.signature_classes(3)] == [(3,), (2, 1), (1, 1, 1)]
    assert [c.exponents for c in arith.signature_classes(1)] == [(1,)]


@pytest.mark.parametrize("i", range(1, 12))
def test_signature_classes_are_all_partitions_in_canonical_order(i):
    got = [c.exponents for c in arith.signature_classes(i)]
    assert got == list(partitions(i))
    assert all(c.level == i for c in arith.signature_classes(i))


def test_quotient_level_examples():
    assert arith.quotient_level(3, 2) == 2
    assert arith.quotient_level(5, 1) == 5
    assert arith.quotient_level(2, 12) is None


@pytest.mark.parametrize("i", range(0, 6))
@pytest.mark.parametrize("m", [1, 2, 4, 6, 12, 30, 64, 97])
def test_quotient_level_against_bruteforce(i, m):
    members = [r for r in range(1, 3000) if big_omega(r * m) == i]
    want = arith.quotient_level(i, m)
    if want is None:
        assert members == []
    else:
        assert members == [r for r in range(1, 3000) if big_omega(r) == want]


def test_omega_sieve_examples():
    assert arith.omega_sieve(1, 10).tolist() == [0, 1, 1, 2, 1, 2, 1, 3, 2, 2]
    assert arith.omega_sieve(8, 8).tolist() == [3]
    assert arith.omega_sieve(1, 1).tolist() == [0]
    assert arith.omega_sieve(5, 4).tolist() == []


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10**6), st.integers(0, 3000), st.integers(1, 700))
def test_omega_sieve_segments_match_oracle(lo, width, segment):
    got = arith.omega_sieve(lo, lo + width, segment=segment)
    assert got.tolist() == [big_omega(n) for n in range(lo, lo + width + 1)]


def test_omega_table_readonly_and_correct():
    t = arith.omega_upto(5000)
    assert t[0] == 0
    assert t[1:].tolist() == [big_omega(n) for n in range(1, 5001)]
    with pytest.raises(ValueError):
        t[3] = 9


def test_prime_helpers():
    ps = arith.primes_upto(100)
    assert ps.tolist() == [p for p in range(2, 101) if factor_pairs(p) == [(p, 1)]]
    assert arith.nth_prime(0) == 2 and arith.nth_prime(999) == 7919
    assert arith.prime_index(7919) == 999
    with pytest.raises(DomainError):
        arith.prime_index(12)


def test_divisors_and_roots():
    assert arith.divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert arith.iroot(3**12, 4) == 27
    assert arith.iroot(10, 2) is None


def test_omega_is_completely_additive_on_a_grid():
    t = arith.omega_upto(200 * 200)
    small = np.arange(1, 201)
    prods = np.outer(small, small)
    assert np.array_equal(t[prods], t[small][:, None] + t[small][None, :])
