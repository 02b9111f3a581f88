import jsonschema

from nonevasive import harness
from nonevasive.harness import VerifyConfig, check_instance, verify_conjecture
from nonevasive.poset import chain
from nonevasive.schemas import REPORT, SUMMARY


def test_config_matches_function():
    cfg = VerifyConfig(max_n=4, variant="bw", seed=5, random_count=4)
    assert cfg.run() == verify_conjecture(4, variant="bw", seed=5, random_count=4)


def test_counts_per_n():
    summary = VerifyConfig(max_n=4).run()
    by_n = summary["exhaustive"]["by_n"]
    assert [by_n[str(n)]["posets"] for n in range(1, 5)] == [1, 2, 5, 16]
    assert [by_n[str(n)]["pairs"] for n in range(1, 5)] == [1, 4, 15, 64]
    jsonschema.validate(summary, SUMMARY)


def test_random_phase_defaults_seed():
    summary = VerifyConfig(max_n=2, random_count=3).run()
    assert summary["seed"] == 0 and summary["random"]["count"] == 3


def test_first_candidate_mode():
    assert VerifyConfig(max_n=5, all_candidates=False).run()["ok"]


def test_injected_failure_is_reported(monkeypatch):
    monkeypatch.setattr(harness, "is_non_evasive", lambda cx: None)
    res = check_instance(chain(3), 0, "theorem8")
    assert res.holds and not res.ok
    assert {"step": "search"} in res.failures
    jsonschema.validate(res.report, REPORT)
    summary = verify_conjecture(2, variant="theorem8")
    assert not summary["ok"] and summary["failures"]
    jsonschema.validate(summary, SUMMARY)
