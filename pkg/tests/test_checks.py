from quasipos.checks import CHECKS, oracle_corpus, run_checks


def test_every_check_but_the_stated_recursion_passes():
    results = {r.name: r for r in run_checks(seed=3)}
    assert set(results) == set(CHECKS)
    failing = sorted(name for name, r in results.items() if not r.passed)
    assert failing == ["g1-recursion-stated"], [results[n].line() for n in failing]


def test_stated_recursion_fails_at_every_tested_m():
    (r,) = run_checks(["g1-recursion-stated"])
    assert not r.passed and "-6" in r.detail and "-11" in r.detail


def test_oracle_corpus_is_seeded():
    a = oracle_corpus(seed=1, count=20)
    assert a == oracle_corpus(seed=1, count=20)
    assert all(len(d.crossings) <= 10 for d in a)
