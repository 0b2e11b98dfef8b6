"""Lazily evaluated subsets of N and the set operators on them."""

from .grammar import parse_set, render
from .levelset import LevelSet
from .rules import finite_exceptions, finite_meet, is_upward_closed, prove_disjoint, prove_subset
from .terms import (
    SELECTORS,
    Complement,
    Diagonal,
    DistinctProducts,
    DownClosure,
    Finite,
    GeomTimes,
    Image,
    Intersection,
    Level,
    MultiplesOf,
    PowerProducts,
    Powers,
    PrimeClass,
    Primes,
    ProductUnion,
    Quotient,
    Scale,
    SetDescriptor,
    Tail,
    Union,
    UpClosure,
    register_selector,
)


def member(s: SetDescriptor, n: int) -> bool:
    if n < 1:
        raise ValueError("membership is defined for n >= 1")
    return s.contains(n)


def enumerate_set(s: SetDescriptor, bound: int) -> list[int]:
    """Members of s in [1, bound], ascending."""
    if bound < 1:
        return []
    return s.enumerate(bound)


def quotient(s: SetDescriptor, n: int) -> SetDescriptor:
    if n < 1:
        raise ValueError("quotient by n >= 1 only")
    return s if n == 1 else Quotient(s, n)


def up_closure(s: SetDescriptor) -> SetDescriptor:
    return UpClosure(s)


def down_closure(s: SetDescriptor, search_bound: int | None = None) -> SetDescriptor:
    return DownClosure(s) if search_bound is None else DownClosure(s, search_bound)


def product_union(b: SetDescriptor, c: SetDescriptor) -> SetDescriptor:
    return ProductUnion(b, c)


__all__ = [name for name in dir() if not name.startswith("_")]
