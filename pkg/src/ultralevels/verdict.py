"""Three-valued outcomes for semi-decidable questions about lazy sets and filters."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


@dataclass(frozen=True)
class Proven:
    rule: str
    witness: object = None

    kind = "Proven"

    def __str__(self):
        return f"Proven({self.rule})"


@dataclass(frozen=True)
class ConsistentUpTo:
    bound: int

    kind = "ConsistentUpTo"

    def __str__(self):
        return f"ConsistentUpTo({self.bound})"


@dataclass(frozen=True)
class Refuted:
    counterexample: int
    note: str = field(default="", compare=False)

    kind = "Refuted"

    def __str__(self):
        return f"Refuted({self.counterexample})"


Verdict = Union[Proven, ConsistentUpTo, Refuted]


def merge(verdicts: Iterable[Verdict]) -> Verdict:
    """Conjunction: Refuted dominates, then the smallest ConsistentUpTo, then Proven.

    Associative and commutative up to which Refuted witness is kept (the
    smallest counterexample wins, so the result is order independent).
    """
    verdicts = list(verdicts)
    if not verdicts:
        return Proven("vacuous")
    refuted = [v for v in verdicts if isinstance(v, Refuted)]
    if refuted:
        return min(refuted, key=lambda v: (v.counterexample, v.note))
    consistent = [v for v in verdicts if isinstance(v, ConsistentUpTo)]
    if consistent:
        return ConsistentUpTo(min(v.bound for v in consistent))
    rules = sorted({v.rule for v in verdicts})
    return Proven("+".join(rules))


def holds(v: Verdict) -> bool:
    """Not refuted."""
    return not isinstance(v, Refuted)
