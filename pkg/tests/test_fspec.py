import pytest

from ultralevels import filters as F
from ultralevels.errors import FIPViolation, ParseError
from ultralevels.fspec import build, build_alpha, parse_filter, render_filter

SPECS = [
    "principal:30",
    "tails:geom(3,2)",
    "tails:diag(pow2)",
    "tails:geom(3,2)@4",
    "falpha:[(2,^3)]",
    "falpha:[(tails:primes,^1,x2)]",
    "falpha:[(2,^2),(tails:primes,^1,x2)]",
    "prod(principal:2,tails:diag(pow2))",
    "push(threetwomap,tails:geom(3,2))",
    "push(sf(2),principal:360)",
    "scale(3,tails:primes)",
    "base(level(2);mult(3))",
    "free(primes;comp(finite(2,3)))",
]


@pytest.mark.parametrize("text", SPECS)
def test_round_trip(text):
    node = parse_filter(text)
    assert render_filter(node) == text
    assert parse_filter(render_filter(node)) == node


@pytest.mark.parametrize("text", SPECS)
def test_specs_build(text):
    x = build(text)
    assert isinstance(x, F.FilterBase) and x.witness is not None


def test_build_values():
    assert build("principal:30") == F.principal(30)
    assert build("push(sf(2),principal:360)") == F.principal(4)
    assert build("falpha:[(2,^3)]") == F.principal(8)
    assert build("falpha:[(base(finite(2,3,5)),^1,x2)]").members(100) == [6, 10, 15]
    assert build("prod(principal:2,principal:3)") == F.principal(6)
    assert build_alpha("[(3,^2),(2,^1,x3)]").sigma == 5


@pytest.mark.parametrize("text", ["principal:", "principal:x", "tails:", "prod(principal:2)", "push(sq(2),principal:3)", "falpha:[(2,1)]", "wat"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_filter(text)


def test_two_distinct_copies_of_one_prime_are_empty():
    # A^(2) needs two distinct elements, and a principal basic offers only one
    with pytest.raises(FIPViolation):
        build("falpha:[(2,^1,x2)]")
