"""Command-line interface.

Exit status: 0 when every verdict is Proven or ConsistentUpTo and no suite
failed, 1 on any Refuted verdict, suite failure or empty family, 2 on a usage,
parse or domain error.
"""

from __future__ import annotations

import argparse
import sys

from . import checker
from . import filters as F
from .arith import omega, quotient_level, signature_classes
from .errors import (
    DisjointnessUnsatisfiable,
    DomainError,
    FIPViolation,
    NoSuchWitness,
    ParseError,
    UnknownSuite,
)
from .fspec import build, build_alpha
from .setlang import Level, parse_set
from .verdict import Refuted
from .witnesses import chain

DEFAULT_BOUND = 10_000


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _natural(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=_positive, default=None, help="search/enumeration bound (default 10000)")
    common.add_argument("--max-level", type=_natural, default=50, help="levels checked for evidence (default 50)")
    common.add_argument("--chain-length", type=_positive, default=8, help="chain length for I bases (default 8)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default 0)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for check (default 1)")
    common.add_argument("--format", choices=("md", "machine"), default="md", help="report format (default md)")
    common.add_argument("--timings", action="store_true", help="include wall times in reports")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="ultralevels", description="Omega levels and ultrafilter bases on N.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("omega", "number of prime factors with multiplicity").add_argument("n", type=_positive)
    add("level", "members of level I up to --bound").add_argument("i", type=_natural)
    add("classes", "prime-signature classes of level I").add_argument("i", type=_natural)
    q = add("quotient", "level of L_I / M")
    q.add_argument("i", type=_natural)
    q.add_argument("m", type=_positive)
    add("enum", "enumerate a set spec up to --bound").add_argument("set")
    add("falpha", "build F_alpha from an alpha spec").add_argument("alpha")
    pr = add("product", "product of two filter specs")
    pr.add_argument("x")
    pr.add_argument("y")
    d = add("divides", "tilde-divisibility verdict x ~| y")
    d.add_argument("x")
    d.add_argument("y")
    add("evidence", "level evidence for a filter spec").add_argument("x")
    add("chain", "tilde-divisibility chain below a filter spec").add_argument("x")
    c = add("check", "run property suites")
    c.add_argument("suite", help="suite name or 'all'")
    return p


def _bound(args):
    return args.bound if args.bound is not None else DEFAULT_BOUND


def _run(args) -> tuple[str, int]:
    cmd = args.cmd
    if cmd == "omega":
        return str(omega(args.n)), 0
    if cmd == "level":
        return " ".join(map(str, Level(args.i).enumerate(_bound(args)))), 0
    if cmd == "classes":
        return "\n".join(str(c) for c in signature_classes(args.i)), 0
    if cmd == "quotient":
        j = quotient_level(args.i, args.m)
        return ("empty" if j is None else f"level({j})"), 0
    if cmd == "enum":
        return " ".join(map(str, parse_set(args.set).enumerate(_bound(args)))), 0
    if cmd == "falpha":
        alpha = build_alpha(args.alpha, _bound(args))
        x = F.f_alpha(alpha)
        members = x.members(_bound(args))
        lines = [f"sigma: {alpha.sigma}", f"base: {x}", f"witness: {x.witness}"]
        lines.append("members: " + (" ".join(map(str, members)) if members else f"(none up to {_bound(args)})"))
        return "\n".join(lines), 0
    if cmd == "product":
        z = F.product(build(args.x, _bound(args)), build(args.y, _bound(args)))
        return f"{z}\nwitness: {z.witness}", 0
    if cmd == "divides":
        v = F.tilde_divides(build(args.x, _bound(args)), build(args.y, _bound(args)), _bound(args))
        return str(v), 1 if isinstance(v, Refuted) else 0
    if cmd == "evidence":
        ev = F.level_evidence(build(args.x, _bound(args)), args.max_level, _bound(args))
        return str(ev), 0
    if cmd == "chain":
        b = _bound(args)
        c = chain(build(args.x, b), b, args.chain_length, args.max_level)
        lines, code = [], 0
        for k, z in enumerate(c, start=1):
            lines.append(f"{k}: {z}")
        for a, z in zip(c, c[1:]):
            v = F.tilde_divides(a, z, b)
            code |= isinstance(v, Refuted)
            lines.append(f"{a} ~| {z}: {v}")
        return "\n".join(lines), int(code)
    if cmd == "check":
        names = checker.suite_names() if args.suite == "all" else [args.suite]
        overrides = {
            "bound": args.bound,
            "max_level": args.max_level,
            "chain_length": args.chain_length,
            "seed": args.seed,
        }
        results = checker.run_suites(names, overrides, args.jobs)
        fmt = checker.report_machine if args.format == "machine" else checker.report_markdown
        return fmt(results, args.timings).rstrip("\n"), 0 if all(r.ok for r in results) else 1
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = _run(args)
    except (ParseError, UnknownSuite, DomainError, NoSuchWitness) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownSuite) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        if isinstance(exc, UnknownSuite):
            print("known suites: " + ", ".join(checker.suite_names()), file=sys.stderr)
        return 2
    except (FIPViolation, DisjointnessUnsatisfiable) as exc:
        print(f"empty: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
