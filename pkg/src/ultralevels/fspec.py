"""Text syntax for filter bases.

    filter := 'principal:' INT
            | 'tails:' set ['@' INT]
            | 'base(' set (';' set)* ')' | 'free(' set (';' set)* ')'
            | 'falpha:[' entry (',' entry)* ']'
            | 'prod(' filter ',' filter ')' | 'push(' map ',' filter ')'
            | 'scale(' INT ',' filter ')'
    entry  := '(' (INT | filter) ',^' INT [',x' INT] ')'    basic, exponent, multiplicity

Examples: ``principal:12``, ``tails:geom(3,2)@4``, ``falpha:[(2,^2),(tails:primes,^1,x2)]``,
``push(threetwomap,tails:geom(3,2))``. ``parse_filter`` yields a small syntax tree
that ``render_filter`` prints back verbatim and ``build`` evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import filters as F
from .errors import ParseError
from .setlang.grammar import Tokens, read_map, read_set, render
from .witnesses import scale as scale_base


@dataclass(frozen=True)
class PrincipalSpec:
    n: int


@dataclass(frozen=True)
class TailsSpec:
    set: object
    depth: int = 3


@dataclass(frozen=True)
class GensSpec:
    gens: tuple
    free: bool


@dataclass(frozen=True)
class FAlphaSpec:
    entries: tuple  # (basic spec or int, k, mult)


@dataclass(frozen=True)
class ProdSpec:
    left: object
    right: object


@dataclass(frozen=True)
class PushSpec:
    fmap: object
    base: object


@dataclass(frozen=True)
class ScaleSpec:
    n: int
    base: object


def parse_filter(text: str):
    toks = Tokens(text)
    node = _read(toks)
    toks.done()
    return node


def _read(toks):
    kind, val, pos = toks.peek()
    if kind != "name":
        raise ParseError(f"expected a filter at {pos} in {toks.text!r}")
    toks.next()
    if val == "principal":
        toks.expect(":")
        n = toks.integer()
        if n < 1:
            raise ParseError("principal needs n >= 1")
        return PrincipalSpec(n)
    if val == "tails":
        toks.expect(":")
        s = read_set(toks)
        depth = toks.integer() if toks.accept("@") else 3
        return TailsSpec(s, depth)
    if val in ("base", "free"):
        toks.expect("(")
        gens = [read_set(toks)]
        while toks.accept(";"):
            gens.append(read_set(toks))
        toks.expect(")")
        return GensSpec(tuple(gens), val == "free")
    if val == "falpha":
        toks.expect(":")
        toks.expect("[")
        entries = [_entry(toks)]
        while toks.accept(","):
            entries.append(_entry(toks))
        toks.expect("]")
        return FAlphaSpec(tuple(entries))
    if val == "prod":
        toks.expect("(")
        a = _read(toks)
        toks.expect(",")
        b = _read(toks)
        toks.expect(")")
        return ProdSpec(a, b)
    if val == "push":
        toks.expect("(")
        f = read_map(toks)
        toks.expect(",")
        b = _read(toks)
        toks.expect(")")
        return PushSpec(f, b)
    if val == "scale":
        toks.expect("(")
        n = toks.integer()
        toks.expect(",")
        b = _read(toks)
        toks.expect(")")
        return ScaleSpec(n, b)
    raise ParseError(f"unknown filter form {val!r} at {pos} in {toks.text!r}")


def _entry(toks):
    toks.expect("(")
    basic = toks.integer() if toks.peek()[0] == "int" else _read(toks)
    toks.expect(",")
    toks.expect("^")
    k = toks.integer()
    m = 1
    if toks.accept(","):
        kind, val, pos = toks.next()
        if kind != "name" or not val.startswith("x") or not val[1:].isdigit():
            raise ParseError(f"expected a multiplicity like x2 at {pos} in {toks.text!r}")
        m = int(val[1:])
    toks.expect(")")
    return (basic, k, m)


def render_filter(node) -> str:
    if isinstance(node, PrincipalSpec):
        return f"principal:{node.n}"
    if isinstance(node, TailsSpec):
        extra = "" if node.depth == 3 else f"@{node.depth}"
        return f"tails:{render(node.set)}{extra}"
    if isinstance(node, GensSpec):
        return ("free(" if node.free else "base(") + ";".join(render(g) for g in node.gens) + ")"
    if isinstance(node, FAlphaSpec):
        parts = []
        for b, k, m in node.entries:
            shown = str(b) if isinstance(b, int) else render_filter(b)
            parts.append(f"({shown},^{k})" if m == 1 else f"({shown},^{k},x{m})")
        return "falpha:[" + ",".join(parts) + "]"
    if isinstance(node, ProdSpec):
        return f"prod({render_filter(node.left)},{render_filter(node.right)})"
    if isinstance(node, PushSpec):
        return f"push({node.fmap},{render_filter(node.base)})"
    if isinstance(node, ScaleSpec):
        return f"scale({node.n},{render_filter(node.base)})"
    raise TypeError(f"not a filter spec: {node!r}")


def build(spec, bound: int = F.DEFAULT_BOUND) -> F.FilterBase:
    """Evaluate a spec (text or tree) to a FilterBase."""
    node = parse_filter(spec) if isinstance(spec, str) else spec
    if isinstance(node, PrincipalSpec):
        return F.principal(node.n)
    if isinstance(node, TailsSpec):
        return F.tails(node.set, node.depth, bound)
    if isinstance(node, GensSpec):
        return F.make_base(node.gens, bound, node.free)
    if isinstance(node, FAlphaSpec):
        return F.f_alpha(build_alpha(node, bound))
    if isinstance(node, ProdSpec):
        return F.product(build(node.left, bound), build(node.right, bound))
    if isinstance(node, PushSpec):
        return F.pushforward(node.fmap, build(node.base, bound), bound)
    if isinstance(node, ScaleSpec):
        return scale_base(node.n, build(node.base, bound))
    raise TypeError(f"not a filter spec: {node!r}")


def build_alpha(node, bound: int = F.DEFAULT_BOUND) -> F.Alpha:
    if isinstance(node, str):
        node = parse_filter(node if node.startswith("falpha") else f"falpha:{node}")
    return F.Alpha([(b if isinstance(b, int) else build(b, bound), k, m) for b, k, m in node.entries])
