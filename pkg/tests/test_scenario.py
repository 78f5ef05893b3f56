"""Scenario loading, grid execution and parameter sweeps."""

import json

import pytest

from netshare import (
    AreaKind,
    CostTable,
    ElementClass,
    Scenario,
    SharingConfiguration,
    SweepSpec,
    apply_sharing,
    cumulative_cost,
    default_profile,
    load_scenario,
    load_scenario_file,
    preset,
    reference_cost_table,
    run_scenario,
    savings_report,
    sweep,
)
from netshare.errors import (
    InvalidScenario,
    InvalidSweepParameter,
    MalformedScenario,
    ZeroBaseline,
)
from netshare.scenario import fixture_dir, fixture_path

USE_CASE = "paper_use_case.json"
GRID_PRESETS = (
    "MOCN",
    "MOCN + Backhaul",
    "MOCN - Spectrum",
    "GWCN",
    "GWCN + Backhaul",
    "GWCN - Spectrum",
)


def _document(**overrides):
    """Minimal valid scenario document, inline cost table."""
    doc = {
        "name": "unit",
        "areas": ["urban"],
        "cost_tables": {
            "urban": {
                "area": "urban",
                "entries": {
                    "nodeb": {"capex": 600.0, "opex_annual": 40.0},
                    "backhaul": {"capex": 200.0, "opex_annual": 30.0},
                    "oam": {"capex": 100.0, "opex_annual": 50.0},
                    "international_connectivity": {"capex": 0.0, "opex_annual": 80.0},
                },
            }
        },
        "configurations": ["MOCN"],
    }
    doc.update(overrides)
    return json.dumps(doc)


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def test_bundled_use_case_loads_three_by_six():
    scenario = load_scenario_file(USE_CASE)
    assert scenario.name == "paper_use_case"
    assert scenario.horizon_years == 5
    assert tuple(p.kind for p in scenario.areas) == (
        AreaKind.URBAN,
        AreaKind.SUBURBAN,
        AreaKind.RURAL,
    )
    assert tuple(c.name for c in scenario.configurations) == GRID_PRESETS


def test_empty_configuration_list_is_invalid():
    with pytest.raises(InvalidScenario):
        load_scenario(_document(configurations=[]))


def test_misspelled_top_level_key_is_named():
    with pytest.raises(MalformedScenario, match="horizon_yrs"):
        load_scenario(_document(horizon_yrs=5))


def test_misspelled_sweep_key_is_named():
    bad_sweep = {"parameter": "horizon_years", "from": 1, "to": 5, "stepz": 5}
    with pytest.raises(MalformedScenario, match="stepz"):
        load_scenario(_document(sweep=bad_sweep))


def test_json_syntax_errors_carry_position():
    with pytest.raises(MalformedScenario, match="line"):
        load_scenario('{"name": "x",}')


def test_unknown_preset_name_is_rejected():
    from netshare.errors import UnknownPreset

    with pytest.raises(UnknownPreset, match="MOCN plus"):
        load_scenario(_document(configurations=["MOCN plus"]))


def test_inline_configuration_matrix_is_accepted():
    inline = preset("MOCN").to_json_dict()
    inline["name"] = "custom"
    scenario = load_scenario(_document(configurations=[inline]))
    assert scenario.configurations[0].name == "custom"


def test_cost_table_area_must_match_its_key():
    doc = json.loads(_document())
    doc["cost_tables"]["urban"]["area"] = "rural"
    with pytest.raises(InvalidScenario, match="rural"):
        load_scenario(json.dumps(doc))


def test_invalid_configuration_aborts_loading():
    # a pooled core without a shared RNC violates a structural rule
    bad = SharingConfiguration(
        name="core_only", shared={ElementClass.CORE_SGSN: True, ElementClass.PASSIVE_SITE: True}
    ).to_json_dict()
    with pytest.raises(InvalidScenario, match="GwcnWithoutRan"):
        load_scenario(_document(configurations=[bad]))


def test_policy_block_feeds_validation():
    doc = json.loads(_document())
    doc["policy"] = {"spectrum_pooling_allowed": False}
    with pytest.raises(InvalidScenario, match="SpectrumPoolingForbidden"):
        load_scenario(json.dumps(doc))
    doc["configurations"] = ["MOCN - Spectrum"]
    scenario = load_scenario(json.dumps(doc))
    assert scenario.policy is not None


def test_scenario_file_resolution_prefers_cwd(tmp_path, monkeypatch):
    custom = json.loads(_document(name="local_copy"))
    (tmp_path / USE_CASE).write_text(json.dumps(custom))
    monkeypatch.chdir(tmp_path)
    assert load_scenario_file(USE_CASE).name == "local_copy"


def test_fixture_dir_env_override(tmp_path, monkeypatch):
    table = reference_cost_table(AreaKind.URBAN)
    (tmp_path / "reference_costs_urban.json").write_text(table.scaled(2.0).to_json())
    monkeypatch.setenv("NETSHARE_FIXTURES", str(tmp_path))
    assert fixture_dir() == tmp_path
    doubled = reference_cost_table(AreaKind.URBAN)
    assert doubled.capex_total() == pytest.approx(2.0 * table.capex_total())


def test_missing_fixture_reports_search_paths():
    with pytest.raises(MalformedScenario, match="no_such_file.json"):
        fixture_path("no_such_file.json")


# ---------------------------------------------------------------------------
# grid execution
# ---------------------------------------------------------------------------


def test_grid_has_full_cardinality():
    scenario = load_scenario_file(USE_CASE)
    result = run_scenario(scenario)
    assert len(result.grid) == 18
    assert result.area_order == (AreaKind.URBAN, AreaKind.SUBURBAN, AreaKind.RURAL)
    assert result.configuration_order == GRID_PRESETS
    reports = result.reports()
    assert [r.area for r in reports[:6]] == [AreaKind.URBAN] * 6


def test_nothing_shared_column_is_all_zero():
    nothing = SharingConfiguration(name="alone", shared={}).to_json_dict()
    scenario = load_scenario(_document(configurations=[nothing]))
    result = run_scenario(scenario)
    report = result.report(AreaKind.URBAN, "alone")
    assert report.total_saving_pct == 0.0
    assert report.capex_saving_pct == 0.0


def test_rural_capex_band_on_bundled_fixture():
    result = run_scenario(load_scenario_file(USE_CASE))
    for name in GRID_PRESETS:
        pct = result.report(AreaKind.RURAL, name).capex_saving_pct
        assert 27.4 <= pct <= 50.6


def test_reruns_are_identical():
    scenario = load_scenario_file(USE_CASE)
    first = run_scenario(scenario)
    second = run_scenario(scenario)
    for key, report in first.grid.items():
        other = second.grid[key]
        assert report.total_saving_pct == other.total_saving_pct
        assert report.capex_saving_pct == other.capex_saving_pct


def test_best_configuration_breaks_ties_in_grid_order():
    scenario = load_scenario_file(USE_CASE)
    result = run_scenario(scenario)
    best = result.best_configuration(AreaKind.URBAN)
    assert best.configuration == "GWCN + Backhaul"


def test_cell_errors_carry_grid_coordinates():
    empty = CostTable(area=AreaKind.URBAN, entries={})
    scenario = Scenario(
        name="broken",
        areas=(default_profile(AreaKind.URBAN),),
        cost_tables={AreaKind.URBAN: empty},
        configurations=(preset("MOCN"),),
    )
    with pytest.raises(ZeroBaseline, match=r"area=urban configuration=MOCN"):
        run_scenario(scenario)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


def _sweep_scenario(sweep_doc, **extra):
    return load_scenario(_document(sweep=sweep_doc, **extra))


def test_sweep_requires_a_specification():
    scenario = load_scenario(_document())
    with pytest.raises(InvalidSweepParameter):
        sweep(scenario)


def test_sweep_values_are_strictly_ordered():
    scenario = _sweep_scenario(
        {"parameter": "horizon_years", "from": 1, "to": 5, "steps": 9}
    )
    result = sweep(scenario)
    values = [p.value for p in result.points]
    assert values == sorted(set(values))  # independent sort oracle
    assert values == [1, 2, 3, 4, 5]  # integer horizons deduplicate


def test_split_ratio_sweep_is_linear_for_a_single_shared_class():
    # one shared class holding everything: saving fraction = 1 - ratio
    doc = {
        "name": "split",
        "areas": ["urban"],
        "cost_tables": {
            "urban": {"area": "urban", "entries": {"nodeb": {"capex": 100.0, "opex_annual": 0.0}}}
        },
        "configurations": [
            {
                "name": "nodeb_only",
                "shared": {"nodeb": True},
                "operators": 2,
                "split": [0.5, 0.5],
                "intl_shared": False,
            }
        ],
        "sweep": {"parameter": "split_ratio", "from": 0.5, "to": 0.9, "steps": 5},
    }
    result = sweep(load_scenario(json.dumps(doc)))
    for point in result.points:
        report = point.result.report(AreaKind.URBAN, "nodeb_only")
        assert report.total_saving_pct == pytest.approx(100.0 * (1.0 - point.value), abs=1e-9)
    assert [p.value for p in result.points] == pytest.approx([0.5, 0.6, 0.7, 0.8, 0.9])


def test_horizon_sweep_matches_closed_form_weighting():
    scenario = _sweep_scenario({"parameter": "horizon_years", "from": 1, "to": 8, "steps": 8})
    table = scenario.cost_tables[AreaKind.URBAN]
    config = scenario.configurations[0]
    capex_total = table.capex_total()
    opex_annual = table.opex_annual_total()
    result = sweep(scenario)
    previous_weight = -1.0
    for point in result.points:
        horizon = int(point.value)
        report = point.result.report(AreaKind.URBAN, "MOCN")
        # independent oracle: blend the two per-ledger savings by cost mass
        opex_weight = horizon * opex_annual / (capex_total + horizon * opex_annual)
        expected = (
            report.capex_saving_pct * (1.0 - opex_weight)
            + report.opex_saving_pct * opex_weight
        )
        assert report.total_saving_pct == pytest.approx(expected, rel=1e-9)
        assert opex_weight > previous_weight  # strictly increasing with horizon
        previous_weight = opex_weight


def test_intl_sweep_strictly_increases_total_saving():
    scenario = _sweep_scenario({"parameter": "intl_shared", "from": 0, "to": 1, "steps": 2})
    result = sweep(scenario)
    off = result.points[0].result.report(AreaKind.URBAN, "MOCN").total_saving_pct
    on = result.points[1].result.report(AreaKind.URBAN, "MOCN").total_saving_pct
    assert on > off  # the international link carries cost in the table


def test_class_cost_fraction_sweep_hits_requested_share():
    spec_doc = {
        "parameter": "class_cost_fraction",
        "class": "backhaul",
        "from": 0.1,
        "to": 0.4,
        "steps": 4,
    }
    scenario = _sweep_scenario(spec_doc)
    result = sweep(scenario)
    for point in result.points:
        swept = point.result
        report = swept.report(AreaKind.URBAN, "MOCN")
        baseline = report.baseline
        share = (
            baseline.per_class[ElementClass.BACKHAUL].total / baseline.grand_total()
        )
        assert share == pytest.approx(point.value, rel=1e-6)


def test_class_cost_fraction_needs_the_class_somewhere():
    spec_doc = {
        "parameter": "class_cost_fraction",
        "class": "staff",
        "from": 0.1,
        "to": 0.4,
        "steps": 4,
    }
    scenario = _sweep_scenario(spec_doc)
    with pytest.raises(InvalidSweepParameter, match="staff"):
        sweep(scenario)


def test_sweep_spec_validation():
    with pytest.raises(InvalidSweepParameter):
        SweepSpec(parameter="horizon_years", start=5, stop=1, steps=4)
    with pytest.raises(InvalidSweepParameter):
        SweepSpec(parameter="horizon_years", start=1, stop=5, steps=1)
    with pytest.raises(InvalidSweepParameter):
        SweepSpec(parameter="horizon_years", start=1, stop=5, steps=20_000)
    with pytest.raises(InvalidSweepParameter):
        SweepSpec(parameter="discount_rate", start=0.0, stop=0.1, steps=3)
    spec = SweepSpec(parameter="split_ratio", start=0.2, stop=0.8, steps=4)
    assert spec.values() == pytest.approx([0.2, 0.4, 0.6, 0.8])


def test_sweep_spec_round_trips_through_json():
    spec = SweepSpec(
        parameter="class_cost_fraction", start=0.1, stop=0.5, steps=5, class_name="backhaul"
    )
    assert SweepSpec.from_json_dict(spec.to_json_dict()) == spec


def test_split_ratio_sweep_rejects_degenerate_ratios():
    scenario = _sweep_scenario({"parameter": "split_ratio", "from": 0.0, "to": 1.0, "steps": 3})
    with pytest.raises(InvalidSweepParameter):
        sweep(scenario)
