import json

import pytest

from ultralevels import checker
from ultralevels.errors import UnknownSuite
from ultralevels.verdict import ConsistentUpTo, Proven, Refuted

QUICK = {
    "level-partition": {"bound": 500},
    "signature-partition": {"bound": 500, "levels": 4},
    "omega-additivity": {"max_factor": 100},
    "quotient-law": {"bound": 500, "levels": 4, "max_m": 50},
    "finite-union": {"levels": 4, "principals": 100},
    "falpha-level": {"bound": 2000, "count": 5},
    "alpha-additivity": {"count": 5},
    "principal-tilde-divisibility": {"pair_bound": 40},
    "tilde-prime": {"bound": 500, "irreducible_bound": 100, "prime_bound": 20, "pair_bound": 20},
    "decomposition": {"bound": 300},
    "pushforward-divides": {"bound": 1000, "closed_form_bound": 100},
    "chain-suite": {"principals": 100, "chain_length": 3},
    "I-evidence": {"max_level": 10},
    "I-tail": {"levels": 5},
    "I-product": {"principals": 5},
    "theorem-3-5c": {"witness_count": 4},
}


def test_every_suite_has_quick_params():
    assert sorted(QUICK) == sorted(checker.suite_names())


@pytest.mark.parametrize("name", sorted(QUICK))
def test_suite_passes_on_small_params(name):
    r = checker.run_suite(name, QUICK[name])
    assert r.ok, r.failures
    assert r.cases_run > 0
    assert r.cases_run == r.proven + r.consistent + r.refuted
    for k, v in QUICK[name].items():
        assert r.params[k] == v


def test_oracles():
    assert [checker.omega_oracle(n) for n in (1, 8, 30, 97)] == [0, 3, 3, 1]
    assert checker.prime_oracle(97) and not checker.prime_oracle(91)
    assert checker.exponents_oracle(360) == (3, 2, 1)


def test_suite_result_bookkeeping():
    r = checker.SuiteResult("x", {})
    r.record(Proven("rule"))
    r.record(ConsistentUpTo(10))
    assert r.ok and not r.failures
    for i in range(30):
        r.record(Refuted(i), "case")
    assert r.refuted == 30 and len(r.failures) == checker.MAX_LISTED_FAILURES
    assert not r.ok and r.cases_run == 32


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        checker.run_suite("no-such-suite")
    with pytest.raises(UnknownSuite):
        checker.run_suites(["level-partition", "nope"])


def test_unused_overrides_are_ignored():
    r = checker.run_suite("level-partition", {"bound": 100, "chain_length": 4})
    assert r.params == {"bound": 100}


def test_machine_report_is_deterministic_and_ordered():
    names = ["tilde-prime", "level-partition", "I-tail"]
    overrides = {"bound": 300, "levels": 3}
    a = checker.report_machine(checker.run_suites(names, overrides))
    b = checker.report_machine(checker.run_suites(names, overrides, jobs=3))
    assert a == b
    recs = [json.loads(line) for line in a.splitlines()]
    assert [r["suite"] for r in recs] == names
    assert list(recs[0]) == ["suite", "params", "cases_run", "proven", "consistent", "refuted", "failures", "notes"]


def test_timings_only_on_request():
    res = checker.run_suites(["level-partition"], {"bound": 100})
    assert "wall_time" not in checker.report_machine(res)
    assert "wall_time" in checker.report_machine(res, timings=True)
    md = checker.report_markdown(res, timings=True)
    assert "| seconds |" in md and "1 suites, 0 failures." in md


def test_random_alphas_are_seeded():
    a = [str(x) for x in checker.random_alphas(7, 20)]
    assert a == [str(x) for x in checker.random_alphas(7, 20)]
    assert a != [str(x) for x in checker.random_alphas(8, 20)]
    assert all(x.sigma <= 10 for x in checker.random_alphas(7, 50))
