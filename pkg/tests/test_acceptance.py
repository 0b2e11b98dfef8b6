"""Acceptance criteria, one test each, run at full default scale.

Every test appends a single ``PASS``/``FAIL`` line to the summary printed at
the end of the pytest run (see conftest.py). Running this file directly with
``python tests/test_acceptance.py`` prints the same lines without pytest.
"""

import json
import subprocess
import sys
import time

import pytest

from ultralevels import checker

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

_cache: dict = {}


def suite(name, **params):
    key = (name, tuple(sorted(params.items())))
    if key not in _cache:
        _cache[key] = checker.run_suite(name, params)
    return _cache[key]


def verdict(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def suite_line(criterion, results, limit):
    results = results if isinstance(results, list) else [results]
    bad = sum(r.refuted for r in results)
    cases = sum(r.cases_run for r in results)
    secs = sum(r.wall_time for r in results)
    ok = bad == 0 and secs < limit
    shown = "; ".join(f for r in results for f in r.failures[:2])
    cap = "no limit" if limit == float("inf") else f"limit {limit}s"
    verdict(criterion, ok, f"{cases} cases, {bad} failures, {secs:.2f}s ({cap}){' ' + shown if shown else ''}")
    return results


def test_level_partition():
    r = suite("level-partition", bound=10_000)
    assert r.cases_run == 10_000
    suite_line("level-partition", r, 5)


def test_signature_partition():
    r = suite("signature-partition", bound=10_000, levels=8)
    assert any("8, 12, 30" in n for n in r.notes)
    suite_line("signature-partition", r, 5)


def test_omega_additivity():
    r = suite("omega-additivity", max_factor=2000)
    assert r.cases_run == 4_000_000
    suite_line("omega-additivity", r, 30)


def test_quotient_law():
    r = suite("quotient-law", bound=10_000, levels=8, max_m=1000)
    suite_line("quotient-law", r, 60)


def test_falpha_level():
    r = suite("falpha-level", bound=100_000, seed=0, count=100)
    suite_line("falpha-level", r, 30)


def test_principal_tilde_divisibility():
    r = suite("principal-tilde-divisibility", pair_bound=300)
    assert r.cases_run >= 300 * 300
    suite_line("principal-tilde-divisibility", r, 10)


def test_tilde_prime():
    r = suite("tilde-prime", bound=10_000, irreducible_bound=1000)
    # no time limit is set for this criterion; the whole run is bounded below
    suite_line("tilde-prime", r, float("inf"))


def test_decomposition():
    r = suite("decomposition", bound=10_000)
    assert r.cases_run == 9_999
    suite_line("decomposition", r, 30)


def test_pushforward_divides():
    r = suite("pushforward-divides", bound=10_000, closed_form_bound=1000)
    assert any("confirmed for n <= 1000" in n for n in r.notes)
    suite_line("pushforward-divides", r, float("inf"))


def test_i_suite():
    parts = [
        suite("I-evidence", bound=10_000, max_level=50),
        suite("I-tail", bound=10_000, levels=20),
        suite("I-product", bound=10_000, max_level=50, principals=100),
        suite("theorem-3-5c", bound=10_000, max_level=50, witness_count=12),
    ]
    suite_line("I-suite", parts, 30)


def test_check_all_under_two_minutes_and_deterministic():
    cmd = [sys.executable, "-m", "ultralevels", "check", "all", "--format", "machine"]
    t0 = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True, text=True)
    secs = time.perf_counter() - t0
    recs = [json.loads(line) for line in first.stdout.splitlines()]
    # the in-process runs above use the same defaults, so the records must match
    again = checker.report_machine(checker.run_suites(checker.suite_names(), jobs=4))
    same = again == first.stdout
    ok = first.returncode == 0 and secs < 120 and same and len(recs) == len(checker.suite_names())
    bad = sum(r["refuted"] for r in recs)
    verdict(
        "check all",
        ok,
        f"{len(recs)} suites, {bad} failures, exit {first.returncode}, {secs:.1f}s (limit 120s), "
        f"byte-identical rerun: {same}",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
