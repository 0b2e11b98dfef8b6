"""Text syntax for set descriptors.

    set   := 'primes' | 'level(' INT ')' | 'finite(' INT,* ')' | 'mult(' INT ')'
           | 'geom(' INT ',' INT [',' INT] ')' | 'diag' ['(' NAME ')']
           | 'pclass(' INT ',' INT ')'
           | 'powers(' set ',' INT ')' | 'dprod(' set ',' INT ')'
           | 'pprod(' set (',' INT ',' INT)+ ')'
           | 'scale(' INT ',' set ')' | 'quot(' set ',' INT ')'
           | 'up(' set ')' | 'down(' set [',' INT] ')' | 'pu(' set ',' set ')'
           | 'tail(' set ',' INT ')' | 'union(' set,+ ')' | 'inter(' set,+ ')'
           | 'comp(' set ')' | 'img(' map ',' set ')'
    map   := 'sf(' INT ')' | 'sm(' INT ')' | 'pow(' INT ')' | 'threetwomap'

``render`` is the inverse of ``parse_set``: parse_set(render(t)) == t.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from . import terms as T

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),:\[\]^@;]))")


class Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {self.text!r}")
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.items[j] if j < len(self.items) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r} at {pos} in {self.text!r}, got {val!r}")

    def accept(self, value):
        if self.peek()[1] == value:
            self.i += 1
            return True
        return False

    def integer(self):
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError(f"expected an integer at {pos} in {self.text!r}")
        return int(val)

    def name(self):
        kind, val, pos = self.next()
        if kind != "name":
            raise ParseError(f"expected a name at {pos} in {self.text!r}")
        return val

    def done(self):
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input at {pos} in {self.text!r}")


def parse_set(text: str) -> T.SetDescriptor:
    toks = Tokens(text)
    s = read_set(toks)
    toks.done()
    return s


def read_set(toks: Tokens) -> T.SetDescriptor:
    name = toks.name()
    try:
        return _read_named(name, toks)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad arguments to {name}: {exc}") from None


def _read_named(name, toks):
    if name == "primes":
        return T.Primes()
    if name == "diag":
        if toks.accept("("):
            sel = toks.name()
            toks.expect(")")
            return T.Diagonal(sel)
        return T.Diagonal()
    toks.expect("(")
    if name == "level":
        out = T.Level(toks.integer())
    elif name == "finite":
        vals = [] if toks.peek()[1] == ")" else [toks.integer()]
        while toks.accept(","):
            vals.append(toks.integer())
        out = T.Finite(vals)
    elif name == "mult":
        out = T.MultiplesOf(toks.integer())
    elif name == "geom":
        args = [toks.integer()]
        while toks.accept(","):
            args.append(toks.integer())
        if len(args) not in (2, 3):
            raise ParseError("geom takes 2 or 3 integers")
        out = T.GeomTimes(*args)
    elif name == "pclass":
        r = toks.integer()
        toks.expect(",")
        out = T.PrimeClass(r, toks.integer())
    elif name in ("powers", "dprod", "quot", "tail"):
        s = read_set(toks)
        toks.expect(",")
        k = toks.integer()
        out = {"powers": T.Powers, "dprod": T.DistinctProducts, "quot": T.Quotient, "tail": T.Tail}[name](s, k)
    elif name == "pprod":
        s = read_set(toks)
        blocks = []
        while toks.accept(","):
            k = toks.integer()
            toks.expect(",")
            blocks.append((k, toks.integer()))
        if not blocks:
            raise ParseError("pprod needs at least one (k, n) block")
        out = T.PowerProducts(s, tuple(blocks))
    elif name == "scale":
        n = toks.integer()
        toks.expect(",")
        out = T.Scale(n, read_set(toks))
    elif name == "up":
        out = T.UpClosure(read_set(toks))
    elif name == "comp":
        out = T.Complement(read_set(toks))
    elif name == "down":
        s = read_set(toks)
        out = T.DownClosure(s, toks.integer()) if toks.accept(",") else T.DownClosure(s)
    elif name == "pu":
        a = read_set(toks)
        toks.expect(",")
        out = T.ProductUnion(a, read_set(toks))
    elif name in ("union", "inter"):
        parts = [read_set(toks)]
        while toks.accept(","):
            parts.append(read_set(toks))
        out = (T.Union if name == "union" else T.Intersection)(*parts)
    elif name == "img":
        fmap = read_map(toks)
        toks.expect(",")
        out = T.Image(fmap, read_set(toks))
    else:
        raise ParseError(f"unknown set constructor {name!r}")
    toks.expect(")")
    return out


def read_map(toks: Tokens):
    from ..witnesses import NamedMap

    name = toks.name()
    if name == "threetwomap":
        return NamedMap("threetwomap")
    if name not in ("sf", "sm", "pow"):
        raise ParseError(f"unknown map {name!r}")
    toks.expect("(")
    k = toks.integer()
    toks.expect(")")
    try:
        return NamedMap(name, k)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_map(text: str):
    toks = Tokens(text)
    f = read_map(toks)
    toks.done()
    return f


def render(s: T.SetDescriptor) -> str:
    r = render
    if isinstance(s, T.Primes):
        return "primes"
    if isinstance(s, T.Level):
        return f"level({s.i})"
    if isinstance(s, T.Finite):
        return "finite(" + ",".join(map(str, s.elems)) + ")"
    if isinstance(s, T.MultiplesOf):
        return f"mult({s.n})"
    if isinstance(s, T.GeomTimes):
        tail = "" if s.start == 1 else f",{s.start}"
        return f"geom({s.c},{s.r}{tail})"
    if isinstance(s, T.Diagonal):
        return f"diag({s.selector})"
    if isinstance(s, T.PrimeClass):
        return f"pclass({s.r},{s.m})"
    if isinstance(s, T.Powers):
        return f"powers({r(s.base)},{s.k})"
    if isinstance(s, T.DistinctProducts):
        return f"dprod({r(s.base)},{s.n})"
    if isinstance(s, T.PowerProducts):
        blocks = "".join(f",{k},{n}" for k, n in s.blocks)
        return f"pprod({r(s.base)}{blocks})"
    if isinstance(s, T.Quotient):
        return f"quot({r(s.base)},{s.n})"
    if isinstance(s, T.Tail):
        return f"tail({r(s.base)},{s.k})"
    if isinstance(s, T.Scale):
        return f"scale({s.n},{r(s.base)})"
    if isinstance(s, T.UpClosure):
        return f"up({r(s.base)})"
    if isinstance(s, T.Complement):
        return f"comp({r(s.base)})"
    if isinstance(s, T.DownClosure):
        extra = "" if s.search_bound == T.DEFAULT_SEARCH else f",{s.search_bound}"
        return f"down({r(s.base)}{extra})"
    if isinstance(s, T.ProductUnion):
        return f"pu({r(s.left)},{r(s.right)})"
    if isinstance(s, T.Union):
        return "union(" + ",".join(r(p) for p in s.parts) + ")"
    if isinstance(s, T.Intersection):
        return "inter(" + ",".join(r(p) for p in s.parts) + ")"
    if isinstance(s, T.Image):
        return f"img({s.fmap},{r(s.base)})"
    raise TypeError(f"cannot render {type(s).__name__}")
