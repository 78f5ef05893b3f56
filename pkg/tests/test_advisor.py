"""Verdict table, feasibility checklists and the LTE core-sharing comparison."""

import itertools
import json

import pytest

from netshare import (
    AreaKind,
    LteContext,
    NetworkState,
    Technology,
    Verdict,
    checklist,
    compare_lte,
    recommend,
)
from netshare.advisor import ConstraintChecklist
from netshare.errors import InvalidAmount


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

EXPECTED_VERDICTS = {
    (AreaKind.RURAL, Technology.G2): Verdict.STRONGLY_RECOMMENDED,
    (AreaKind.RURAL, Technology.G3): Verdict.STRONGLY_RECOMMENDED,
    (AreaKind.SUBURBAN, Technology.G2): Verdict.CASE_BY_CASE,
    (AreaKind.SUBURBAN, Technology.G3): Verdict.CASE_BY_CASE,
    (AreaKind.URBAN, Technology.G2): Verdict.NOT_RECOMMENDED,
    (AreaKind.URBAN, Technology.G3): Verdict.CASE_BY_CASE,
}


@pytest.mark.parametrize("area,tech", list(EXPECTED_VERDICTS))
def test_verdict_table_cell(area, tech):
    rec = recommend(area, tech)
    assert rec.verdict is EXPECTED_VERDICTS[(area, tech)]
    assert rec.area is area
    assert rec.technology is tech


def test_verdict_values_serialize_verbatim():
    assert Verdict.STRONGLY_RECOMMENDED.value == "StronglyRecommended"
    assert Verdict.CASE_BY_CASE.value == "CaseByCase"
    assert Verdict.NOT_RECOMMENDED.value == "NotRecommended"


def test_3g_recommendations_always_advise_colocation():
    for area in AreaKind:
        rec = recommend(area, Technology.G3)
        assert any("Co-locate 3G sites" in note for note in rec.notes)


def test_recommendation_serializes():
    doc = recommend(AreaKind.RURAL, Technology.G3).to_json_dict()
    assert doc["verdict"] == "StronglyRecommended"
    assert doc["area"] == "rural"
    assert doc["technology"] == "3g"


# ---------------------------------------------------------------------------
# checklists
# ---------------------------------------------------------------------------


def test_existing_checklist_covers_energy_adaptation():
    doc = checklist(NetworkState.EXISTING)
    assert any("adapt the energy to the new requirements" in i.text for i in doc.items)


def test_new_checklist_covers_backhaul_choice():
    doc = checklist(NetworkState.NEW)
    assert any("lines, Microwave, VSAT" in i.text for i in doc.items)


def test_checklists_are_disjoint_with_identical_domains():
    existing = checklist(NetworkState.EXISTING)
    new = checklist(NetworkState.NEW)
    existing_texts = {i.text for i in existing.items}
    new_texts = {i.text for i in new.items}
    assert not existing_texts & new_texts
    domains = {"site", "energy", "ran", "backhaul"}
    assert {i.domain for i in existing.items} == domains
    assert {i.domain for i in new.items} == domains


def test_checklist_starts_unanswered_and_records_answers():
    doc = checklist(NetworkState.EXISTING)
    assert len(doc.unanswered()) == len(doc.items)
    answered = doc.with_answer(0, True).with_answer(3, False)
    assert answered.items[0].answered is True
    assert answered.items[3].answered is False
    assert len(answered.unanswered()) == len(doc.items) - 2
    with pytest.raises(InvalidAmount):
        doc.with_answer(99, True)


def test_checklist_round_trips_as_json():
    doc = checklist(NetworkState.NEW).with_answer(1, True)
    parsed = ConstraintChecklist.from_json_dict(json.loads(doc.to_json()))
    assert parsed == doc
    bad = doc.to_json_dict()
    bad["extra"] = []
    with pytest.raises(InvalidAmount, match="extra"):
        ConstraintChecklist.from_json_dict(bad)


# ---------------------------------------------------------------------------
# LTE comparison
# ---------------------------------------------------------------------------

EXPECTED_MATRIX = {
    "internetworking_with_legacy": ("+", "-"),
    "cs_fallback": ("+", "-"),
    "ims_voice": ("=", "="),
    "roaming": ("+", "-"),
    "cost": ("-", "+"),
}


def _context_grid():
    for flags in itertools.product((False, True), repeat=4):
        yield LteContext(
            needs_inter_rat_mobility=flags[0],
            needs_cs_fallback=flags[1],
            voice_via_ims=flags[2],
            needs_roaming=flags[3],
        )


def test_raw_matrix_matches_published_rows():
    report = compare_lte(LteContext())
    rows = {r.criterion: (r.mocn, r.gwcn) for r in report.rows}
    assert rows == EXPECTED_MATRIX
    assert all(r.remark for r in report.rows)


def test_raw_matrix_is_context_independent():
    expected = None
    for ctx in _context_grid():
        rows = tuple((r.criterion, r.mocn, r.gwcn) for r in compare_lte(ctx).rows)
        if expected is None:
            expected = rows
        assert rows == expected


def test_all_needs_and_free_cost_prefer_separate_cores():
    ctx = LteContext(
        needs_inter_rat_mobility=True,
        needs_cs_fallback=True,
        voice_via_ims=True,
        needs_roaming=True,
        cost_priority_weight=0.0,
    )
    report = compare_lte(ctx)
    assert report.preferred == "MOCN"
    assert report.mocn_score == pytest.approx(3.0)
    assert report.gwcn_score == pytest.approx(-3.0)


def test_pure_cost_focus_prefers_pooled_core():
    ctx = LteContext(cost_priority_weight=1.0)
    report = compare_lte(ctx)
    assert report.preferred == "GWCN"


def test_no_needs_and_no_cost_weight_is_a_tie():
    ctx = LteContext(cost_priority_weight=0.0)
    report = compare_lte(ctx)
    assert report.preferred == "Tie"
    assert report.mocn_score == 0.0
    assert report.gwcn_score == 0.0


def test_ims_row_never_scores():
    with_ims = LteContext(voice_via_ims=True, cost_priority_weight=0.0)
    report = compare_lte(with_ims)
    assert report.mocn_score == 0.0
    assert report.gwcn_score == 0.0


def test_preference_is_monotone_in_cost_weight():
    for ctx in _context_grid():
        previous_margin = None
        for step in range(11):
            weight = step / 10.0
            report = compare_lte(
                LteContext(
                    needs_inter_rat_mobility=ctx.needs_inter_rat_mobility,
                    needs_cs_fallback=ctx.needs_cs_fallback,
                    voice_via_ims=ctx.voice_via_ims,
                    needs_roaming=ctx.needs_roaming,
                    cost_priority_weight=weight,
                )
            )
            margin = report.gwcn_score - report.mocn_score
            if previous_margin is not None:
                assert margin >= previous_margin - 1e-12
            previous_margin = margin


def test_cost_weight_is_range_checked():
    with pytest.raises(InvalidAmount):
        LteContext(cost_priority_weight=1.5)
    with pytest.raises(InvalidAmount):
        LteContext(cost_priority_weight=-0.1)


def test_comparison_serializes_with_scores():
    doc = compare_lte(LteContext()).to_json_dict()
    assert {"rows", "mocn_score", "gwcn_score", "preferred"} <= set(doc)
    assert doc["rows"][0]["criterion"] == "internetworking_with_legacy"
