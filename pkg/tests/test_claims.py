from __future__ import annotations

import dataclasses
import json

import pytest

from scobcheck import claims
from scobcheck.claims import (CLAIMS, EXPECTATIONS, REGISTRY, STATUSES, exit_code, load_expectations,
                              record_expectations, report_json, report_text, run_claim, run_claims,
                              select)
from scobcheck.cosets import EnumerationLimits

REQUIRED = {
    "CS-Q8-ORDER", "CS-Q8-STRUCTURE", "CS-G-24", "CS-SL23-ISO", "CS-G-ABELIAN", "CS-M-PRESENTATION",
    "CS-H-PI1", "CS-FIBER-ISO", "CS-SURGERY-Q", "CS-H1-Q", "CS-GLUCK-PI1", "CS-W-CAP", "CS-T4-QUOTIENT",
    "CS-TWIST-FAMILY", "CS-HATX-GRID", "CS-MATRIX-AB", "CS-PHI-ORDER-3", "CS-ISOTOPY-DET",
    "CS-STRONG-ACTION", "CS-KIRBY-G",
}


@pytest.fixture(scope="module")
def reports():
    return run_claims()


def test_registry_is_complete_and_unique():
    ids = [c.id for c in REGISTRY]
    assert len(ids) == len(set(ids))
    assert REQUIRED <= set(CLAIMS)
    assert all(c.paper_anchor and c.description for c in REGISTRY)


def test_all_claims_hold(reports):
    bad = {r.id: r.witness for r in reports if r.status not in ("pass", "flagged")}
    assert not bad
    assert [r.id for r in reports if r.status == "flagged"] == ["CS-T4-QUOTIENT"]
    assert exit_code(reports) == 0
    assert all(r.status in STATUSES for r in reports)


def test_reports_sorted(reports):
    ids = [r.id for r in reports]
    assert ids == sorted(ids)


def test_flagged_claim_reports_both_values(reports):
    t4 = next(r for r in reports if r.id == "CS-T4-QUOTIENT")
    assert t4.witness["observed"] == {"G/<<t^4>>": 4, "G/<<t^2>>": 2}
    assert t4.witness["flag"]


def test_json_is_byte_stable_across_runs_and_strategies():
    outs = {report_json(run_claims(limits=EnumerationLimits(strategy=s)), timing=False)
            for s in ("hlt", "felsch", "hlt")}
    assert len(outs) == 1
    doc = json.loads(outs.pop())
    assert all(c["ms"] == 0 for c in doc["claims"])


def test_text_report(reports):
    text = report_text(reports, timing=False)
    lines = text.splitlines()
    assert len(lines) == len(reports) + 1
    assert lines[-1].startswith(f"{len(reports) - 1} pass")


def test_small_limits_give_unknown():
    reps = run_claims(["CS-G-24", "CS-Q8-ORDER"], EnumerationLimits(max_cosets=5))
    assert {r.id: r.status for r in reps} == {"CS-G-24": "unknown", "CS-Q8-ORDER": "unknown"}
    assert exit_code(reps) == 3


def test_missing_expectations_fail():
    reps = run_claims(["CS-HATX-GRID"], expectations={})
    assert reps[0].status == "fail"
    assert "missing" in reps[0].witness["expected"]
    assert exit_code(reps) == 1


def test_wrong_expectation_fails():
    rec = load_expectations()
    rec["CS-HATX-GRID"] = dict(rec["CS-HATX-GRID"], value={"G1": [1]})
    assert run_claims(["CS-HATX-GRID"], expectations=rec)[0].status == "fail"


def test_unknown_claim_id():
    with pytest.raises(KeyError):
        select(["CS-NOPE"])
    assert [c.id for c in select(["CS-G-24", "CS-G-24"])] == ["CS-G-24"]


def test_crashing_procedure_is_contained():
    def boom(limits):
        raise RuntimeError("boom")

    claim = dataclasses.replace(CLAIMS["CS-Q8-ORDER"], procedure=boom)
    rep = run_claim(claim, EnumerationLimits(), {})
    assert rep.status == "fail" and "boom" in rep.witness["error"]


def test_recorded_expectations_match_checked_in(tmp_path):
    out = tmp_path / "exp.json"
    rec = record_expectations(out)
    assert out.read_bytes() == EXPECTATIONS.read_bytes()
    assert set(rec) == {"CS-HATX-GRID", "CS-T4-QUOTIENT"}
    assert rec["CS-HATX-GRID"]["value"]["G3"][2] == 24


def test_load_expectations_missing_file(tmp_path):
    assert load_expectations(tmp_path / "none.json") == {}


def test_whole_run_is_quick(reports):
    assert sum(r.ms for r in reports) < 10_000


def test_module_exposes_expectation_path():
    assert claims.EXPECTATIONS.name == "expectations.json"
