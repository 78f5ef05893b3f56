"""Sharing configurations, presets, level ladder and validation rules."""

import random

import pytest

from netshare import (
    ElementClass,
    NO_SHARING,
    PRESET_NAMES,
    RegulatoryPolicy,
    SharingConfiguration,
    SharingLevel,
    preset,
    sharing_level,
    validate_configuration,
)
from netshare.errors import InvalidConfiguration, UnknownPreset
from netshare.sharing import preset_names

from conftest import random_config


def _shared_labels(config):
    return {cls.value for cls, flag in config.shared.items() if flag}


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def test_the_nine_preset_names():
    assert PRESET_NAMES == (
        "MOCN",
        "MOCN + Backhaul",
        "MOCN - Spectrum",
        "GWCN",
        "GWCN + Backhaul",
        "GWCN - Spectrum",
        "PassiveOnly",
        "SiteAntenna",
        "GatewayRoaming",
    )
    assert "MORAN" in preset_names(include_aliases=True)


def test_gwcn_backhaul_shares_all_six_rows():
    config = preset("GWCN + Backhaul")
    assert _shared_labels(config) == {
        "passive_site",
        "nodeb",
        "rnc",
        "backhaul",
        "spectrum_license",
        "core_sgsn",
    }


def test_mocn_pools_spectrum_but_not_backhaul_or_core():
    config = preset("MOCN")
    shared = _shared_labels(config)
    assert shared == {"passive_site", "nodeb", "rnc", "spectrum_license"}


def test_mocn_minus_spectrum_swaps_spectrum_for_backhaul():
    config = preset("MOCN - Spectrum")
    shared = _shared_labels(config)
    assert "backhaul" in shared
    assert "spectrum_license" not in shared
    assert "core_sgsn" not in shared


def test_moran_alias_is_dedicated_spectrum_ran():
    config = preset("MORAN")
    assert _shared_labels(config) == {"passive_site", "nodeb", "rnc"}


def test_gateway_roaming_sets_single_spectrum_flag():
    config = preset("GatewayRoaming")
    assert config.single_spectrum
    assert _shared_labels(config) == {"passive_site", "nodeb", "rnc", "backhaul"}


def test_preset_defaults_to_two_operators_at_half():
    config = preset("MOCN")
    assert config.operator_count == 2
    assert config.split_ratios == (0.5, 0.5)
    assert not config.intl_shared


def test_preset_is_referentially_transparent():
    for name in PRESET_NAMES:
        assert preset(name) == preset(name)


def test_unknown_preset_raises():
    with pytest.raises(UnknownPreset, match="MOCN\\+B"):
        preset("MOCN+B")


def test_preset_operator_count_override():
    config = preset("MOCN", operator_count=3)
    assert config.split_ratios == pytest.approx((1 / 3, 1 / 3, 1 / 3))


# ---------------------------------------------------------------------------
# configuration construction
# ---------------------------------------------------------------------------


def test_shared_map_defaults_every_class_to_false():
    config = SharingConfiguration(name="bare", shared={ElementClass.NODEB: True})
    assert set(config.shared) == set(ElementClass)
    assert config.shared[ElementClass.STAFF] is False


def test_split_ratios_must_sum_to_one():
    with pytest.raises(InvalidConfiguration):
        SharingConfiguration(name="bad", shared={}, split_ratios=(0.7, 0.7))
    with pytest.raises(InvalidConfiguration):
        SharingConfiguration(name="bad", shared={}, split_ratios=(1.0, 0.0))
    with pytest.raises(InvalidConfiguration):
        SharingConfiguration(name="bad", shared={}, operator_count=1)


def test_effective_shared_applies_couple_and_intl_flags():
    config = SharingConfiguration(
        name="coupled",
        shared={ElementClass.PASSIVE_SITE: True},
        couple_site_costs=True,
        intl_shared=True,
    )
    effective = config.effective_shared()
    assert ElementClass.SITE_RENT in effective
    assert ElementClass.POWER in effective
    assert ElementClass.INTERNATIONAL_CONNECTIVITY in effective
    # coupling only follows a shared passive layer
    bare = SharingConfiguration(
        name="uncoupled", shared={ElementClass.NODEB: True}, couple_site_costs=True
    )
    assert ElementClass.SITE_RENT not in bare.effective_shared()


def test_configuration_json_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        config = random_config(rng)
        back = SharingConfiguration.from_json_dict(config.to_json_dict())
        assert back == config


def test_configuration_document_rejects_unknown_keys():
    doc = preset("MOCN").to_json_dict()
    doc["sharend"] = doc["shared"]
    with pytest.raises(InvalidConfiguration, match="sharend"):
        SharingConfiguration.from_json_dict(doc)


# ---------------------------------------------------------------------------
# level ladder
# ---------------------------------------------------------------------------


def test_levels_are_strictly_ordered():
    levels = list(SharingLevel)
    assert levels == sorted(levels)
    assert SharingLevel.L1_SITE < SharingLevel.L2_ANTENNA < SharingLevel.L3_NODEB
    assert SharingLevel.L3_NODEB < SharingLevel.L4_RNC < SharingLevel.L5_CORE


def test_gwcn_reaches_core_level_with_a_gap():
    assessment = sharing_level(preset("GWCN"))
    assert assessment.level is SharingLevel.L5_CORE
    assert assessment.non_contiguous  # antenna rung unshared


def test_passive_only_is_level_one_contiguous():
    assessment = sharing_level(preset("PassiveOnly"))
    assert assessment.level is SharingLevel.L1_SITE
    assert not assessment.non_contiguous


def test_rnc_only_is_level_four_with_gaps():
    config = SharingConfiguration(name="rnc", shared={ElementClass.RNC: True})
    assessment = sharing_level(config)
    assert assessment.level is SharingLevel.L4_RNC
    assert assessment.non_contiguous


def test_nothing_shared_is_a_distinct_sentinel():
    config = SharingConfiguration(name="solo", shared={})
    assessment = sharing_level(config)
    assert assessment.level is None
    assert assessment is not NO_SHARING or assessment == NO_SHARING
    assert sharing_level(preset("PassiveOnly")).level is not None


def test_adding_a_shared_class_never_lowers_the_level():
    rng = random.Random(17)
    for _ in range(300):
        config = random_config(rng)
        before = sharing_level(config).level
        addition = rng.choice(list(ElementClass))
        after = sharing_level(config.with_shared(addition, True)).level
        if before is not None:
            assert after is not None and after >= before


# ---------------------------------------------------------------------------
# validation rules
# ---------------------------------------------------------------------------


def test_core_sharing_without_ran_is_an_error():
    config = SharingConfiguration(name="bad", shared={ElementClass.CORE_SGSN: True})
    report = validate_configuration(config)
    assert not report.valid
    assert "GwcnWithoutRan" in report.codes()


def test_passive_only_is_clean():
    report = validate_configuration(preset("PassiveOnly"))
    assert report.valid
    assert not report.warnings


def test_spectrum_pooling_can_be_forbidden_by_policy():
    policy = RegulatoryPolicy(spectrum_pooling_allowed=False)
    report = validate_configuration(preset("MOCN"), policy=policy)
    assert "SpectrumPoolingForbidden" in [i.code for i in report.errors]
    # the dedicated-spectrum variant stays legal
    assert validate_configuration(preset("MOCN - Spectrum"), policy=policy).valid


def test_policy_level_cap_is_enforced():
    policy = RegulatoryPolicy(max_level=SharingLevel.L4_RNC)
    report = validate_configuration(preset("GWCN"), policy=policy)
    assert "MaxLevelExceeded" in [i.code for i in report.errors]
    assert validate_configuration(preset("MOCN"), policy=policy).valid


def test_non_contiguous_ladder_warns_but_passes():
    report = validate_configuration(preset("GWCN"))
    assert report.valid
    assert "NonContiguousLadder" in [i.code for i in report.warnings]


def test_low_coverage_warns_under_policy_floor():
    policy = RegulatoryPolicy(min_own_coverage_fraction=0.3)
    report = validate_configuration(preset("MOCN"), coverage=(0.5, 0.2), policy=policy)
    assert report.valid
    assert "CoverageBelowMinimum" in [i.code for i in report.warnings]
    clean = validate_configuration(preset("MOCN"), coverage=(0.5, 0.4), policy=policy)
    assert "CoverageBelowMinimum" not in clean.codes()


def test_crowded_nodeb_warns_above_four_operators():
    config = preset("MOCN", operator_count=5)
    report = validate_configuration(config)
    assert "ManyOperators" in [i.code for i in report.warnings]


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_every_preset_passes_default_validation(name):
    report = validate_configuration(preset(name))
    assert report.valid, report.codes()


def test_validation_never_raises_on_well_formed_input():
    # odd coverage values only feed the warning rule, they never crash it
    report = validate_configuration(
        preset("MOCN"),
        coverage=(0.5, 1.5),
        policy=RegulatoryPolicy(min_own_coverage_fraction=0.3),
    )
    assert report.valid


def test_single_spectrum_flag_warns_about_capacity():
    report = validate_configuration(preset("GatewayRoaming"))
    assert report.valid
    assert "SingleSpectrumCapacity" in [i.code for i in report.warnings]
