import json

import pytest

from semiring_lab.suites import SUITES, SuiteItem, SuiteReport, run_suite

EXPECTED_IDS = {
    "thm-3.1", "prop-3.5", "cor-3.6", "prop-3.10", "thm-3.11", "thm-4.1", "prop-4.2", "prop-4.3",
    "thm-4.4", "thm-4.9", "thm-4.10", "cor-4.11", "facts-4.12", "prop-4.13", "thm-4.16", "thm-4.17",
    "prop-5.1", "facts-5.4-5.5", "prop-5.7", "prop-5.8", "thm-5.9", "thm-5.10", "thm-5.11", "cor-5.12",
    "conj-6.1",
}


def test_registry():
    assert set(SUITES) == EXPECTED_IDS
    with pytest.raises(KeyError):
        run_suite("nope")


@pytest.mark.parametrize("suite_id", list(SUITES))
def test_suite_passes(suite_id):
    rep = run_suite(suite_id)
    assert rep.items, "a suite must check something"
    failing = [(i.description, i.witness) for i in rep.items if i.status == "fail"]
    assert rep.passed, failing
    for item in rep.items:
        assert item.status in ("pass", "fail", "skipped")
        if item.status == "skipped":
            assert item.reason
    json.dumps(rep.to_dict())  # witnesses must be plain JSON


def test_report_logic():
    rep = SuiteReport("x", [SuiteItem("a", "pass"), SuiteItem("b", "skipped", reason="cap")])
    assert rep.passed and rep.counts() == {"pass": 1, "fail": 0, "skipped": 1}
    rep.items.append(SuiteItem("c", "fail"))
    assert not rep.passed
    assert "wall_time" not in rep.to_dict()
