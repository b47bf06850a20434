import pytest

from rispace import PROPERTIES, verify_suite


def test_registry_names_are_unique_and_substantial():
    names = [p.name for p in PROPERTIES]
    assert len(names) == len(set(names))
    assert len(names) >= 30


def test_small_suite_passes():
    suite = verify_suite(seed=7, trials=30)
    assert suite.ok
    assert len(suite.results) == len(PROPERTIES)
    for r in suite.results:
        assert r.passed and r.trials == 30 and r.failures == 0
        assert r.line() == f"PASS {r.name} (30/30)"


def test_suite_is_deterministic_per_seed():
    a = verify_suite(seed=11, trials=10)
    b = verify_suite(seed=11, trials=10)
    assert [r.line() for r in a.results] == [r.line() for r in b.results]


def test_injected_failure_is_caught_and_shrunk():
    suite = verify_suite(seed=42, trials=20, inject_failure=True)
    assert not suite.ok
    bad = [r for r in suite.results if not r.passed]
    assert [r.name for r in bad] == ["injected-violation"]
    ce = bad[0].counterexample
    assert ce["property"] == "injected-violation"
    assert ce["size"] >= 1
    assert "data" in ce
    assert "FAIL injected-violation" in bad[0].line()


def test_name_filter():
    suite = verify_suite(seed=3, trials=15, names=["hardy-littlewood", "json-roundtrip"])
    assert [r.name for r in suite.results] == ["hardy-littlewood", "json-roundtrip"]
    assert suite.ok


def test_input_validation():
    with pytest.raises(ValueError):
        verify_suite(trials=0)
    with pytest.raises(ValueError):
        verify_suite(names=["no-such-property"])
