"""Sharing configurations, preset catalogue and rule-based validation.

A :class:`SharingConfiguration` records which element classes a group of
operators shares and how costs split between them.  Configurations map onto
a five-level ladder (site, antenna, NodeB, RNC, core); sharing higher rungs
without the lower ones is legal but flagged, because in practice operators
climb the ladder from the bottom.

The preset catalogue covers the standard industry arrangements: pooled-
spectrum RAN sharing with and without a shared packet-core gateway
(MOCN/GWCN families), passive-only variants and a roaming-style gateway
arrangement.  MORAN (common RAN, dedicated carriers) is exposed as an alias.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import IntEnum
from typing import Mapping, Optional, Sequence, Tuple

from .errors import InvalidConfiguration, UnknownPreset
from .inventory import ElementClass

__all__ = [
    "LevelAssessment",
    "NO_SHARING",
    "PRESET_NAMES",
    "RegulatoryPolicy",
    "SharingConfiguration",
    "SharingLevel",
    "ValidationIssue",
    "ValidationReport",
    "preset",
    "sharing_level",
    "validate_configuration",
]


class SharingLevel(IntEnum):
    """Sharing ladder from civil infrastructure up to the packet core."""

    L1_SITE = 1
    L2_ANTENNA = 2
    L3_NODEB = 3
    L4_RNC = 4
    L5_CORE = 5


# Class that defines each rung of the ladder; core counts via either gateway.
_LEVEL_CLASS = {
    SharingLevel.L1_SITE: (ElementClass.PASSIVE_SITE,),
    SharingLevel.L2_ANTENNA: (ElementClass.ANTENNA,),
    SharingLevel.L3_NODEB: (ElementClass.NODEB,),
    SharingLevel.L4_RNC: (ElementClass.RNC,),
    SharingLevel.L5_CORE: (ElementClass.CORE_SGSN, ElementClass.CORE_GGSN),
}


@dataclass(frozen=True)
class LevelAssessment:
    """Resolved ladder position: highest shared rung plus a gap flag.

    ``level`` is ``None`` when nothing ladder-relevant is shared (the
    :data:`NO_SHARING` sentinel).  ``non_contiguous`` is true when some rung
    below the highest shared one is not itself shared.
    """

    level: Optional[SharingLevel]
    non_contiguous: bool = False


NO_SHARING = LevelAssessment(level=None, non_contiguous=False)


@dataclass(frozen=True)
class RegulatoryPolicy:
    """Regulatory side conditions a configuration must respect.

    ``min_own_coverage_fraction`` is the population share each operator must
    reach with its own infrastructure before relying on a partner's network.
    """

    min_own_coverage_fraction: float = 0.0
    spectrum_pooling_allowed: bool = True
    max_level: Optional[SharingLevel] = None

    def __post_init__(self) -> None:
        if not (0.0 <= self.min_own_coverage_fraction <= 1.0):
            raise InvalidConfiguration(
                f"min_own_coverage_fraction must be in [0, 1], "
                f"got {self.min_own_coverage_fraction!r}"
            )


def _equal_split(n: int) -> Tuple[float, ...]:
    return tuple(1.0 / n for _ in range(n))


@dataclass(frozen=True)
class SharingConfiguration:
    """Which element classes are shared and how their cost is split.

    ``split_ratios`` gives each operator's share of every shared cost; the
    default is an equal split.  ``intl_shared`` treats international
    connectivity as a jointly purchased service.  ``couple_site_costs``
    extends passive-site sharing to the recurring site costs (rent, power)
    that follow the site itself.  ``single_spectrum`` marks arrangements
    that run on one operator's carriers instead of pooled spectrum.
    """

    name: str
    shared: Mapping[ElementClass, bool] = field(default_factory=dict)
    operator_count: int = 2
    split_ratios: Optional[Tuple[float, ...]] = None
    intl_shared: bool = False
    couple_site_costs: bool = False
    single_spectrum: bool = False
    policy: Optional[RegulatoryPolicy] = None

    def __post_init__(self) -> None:
        if not isinstance(self.operator_count, int) or self.operator_count < 2:
            raise InvalidConfiguration(
                f"operator_count must be an integer >= 2, got {self.operator_count!r}"
            )
        unknown = set(self.shared) - set(ElementClass)
        if unknown:
            raise InvalidConfiguration(
                f"unknown element classes in shared map: {sorted(unknown)!r}"
            )
        full = {cls: bool(self.shared.get(cls, False)) for cls in ElementClass}
        object.__setattr__(self, "shared", full)
        ratios = self.split_ratios
        if ratios is None:
            ratios = _equal_split(self.operator_count)
        ratios = tuple(float(r) for r in ratios)
        if len(ratios) != self.operator_count:
            raise InvalidConfiguration(
                f"{len(ratios)} split ratios for {self.operator_count} operators"
            )
        if any(r <= 0.0 or r > 1.0 for r in ratios):
            raise InvalidConfiguration(f"split ratios must lie in (0, 1], got {ratios!r}")
        if abs(sum(ratios) - 1.0) > 1e-9:
            raise InvalidConfiguration(f"split ratios must sum to 1, got {sum(ratios)!r}")
        object.__setattr__(self, "split_ratios", ratios)

    # -- shared-set helpers ----------------------------------------------

    def is_shared(self, cls: ElementClass) -> bool:
        return self.shared[cls]

    def effective_shared(self) -> frozenset:
        """Shared classes after applying the coupling and service flags."""
        out = {cls for cls, flag in self.shared.items() if flag}
        if self.couple_site_costs and ElementClass.PASSIVE_SITE in out:
            out.add(ElementClass.SITE_RENT)
            out.add(ElementClass.POWER)
        if self.intl_shared:
            out.add(ElementClass.INTERNATIONAL_CONNECTIVITY)
        return frozenset(out)

    def with_shared(self, cls: ElementClass, flag: bool) -> "SharingConfiguration":
        shared = dict(self.shared)
        shared[cls] = flag
        return replace(self, shared=shared)

    # -- serialisation ----------------------------------------------------

    def to_json_dict(self) -> dict:
        doc = {
            "name": self.name,
            "shared": {cls.value: self.shared[cls] for cls in ElementClass},
            "operators": self.operator_count,
            "split": list(self.split_ratios),
            "intl_shared": self.intl_shared,
        }
        if self.couple_site_costs:
            doc["couple_site_costs"] = True
        if self.single_spectrum:
            doc["single_spectrum"] = True
        return doc

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "SharingConfiguration":
        allowed = {
            "name",
            "shared",
            "operators",
            "split",
            "intl_shared",
            "couple_site_costs",
            "single_spectrum",
        }
        unknown = set(doc) - allowed
        if unknown:
            raise InvalidConfiguration(f"unknown configuration keys: {sorted(unknown)!r}")
        if "name" not in doc or "shared" not in doc:
            raise InvalidConfiguration("configuration needs 'name' and 'shared'")
        raw = doc["shared"]
        if not isinstance(raw, Mapping):
            raise InvalidConfiguration("'shared' must map element class labels to booleans")
        shared = {}
        for label, flag in raw.items():
            try:
                key = ElementClass.from_label(label)
            except KeyError as exc:
                raise InvalidConfiguration(str(exc)) from exc
            if not isinstance(flag, bool):
                raise InvalidConfiguration(f"shared[{label!r}] must be a boolean, got {flag!r}")
            shared[key] = flag
        operators = doc.get("operators", 2)
        split = doc.get("split")
        return cls(
            name=str(doc["name"]),
            shared=shared,
            operator_count=operators,
            split_ratios=tuple(split) if split is not None else None,
            intl_shared=bool(doc.get("intl_shared", False)),
            couple_site_costs=bool(doc.get("couple_site_costs", False)),
            single_spectrum=bool(doc.get("single_spectrum", False)),
        )


# ---------------------------------------------------------------------------
# Preset catalogue
# ---------------------------------------------------------------------------

_E = ElementClass
_RAN_SHARED = (_E.PASSIVE_SITE, _E.NODEB, _E.RNC)

# Shared-class matrix per preset.  The six grid presets differ only in
# backhaul, pooled spectrum and the packet-core gateway row.
_PRESET_MATRIX = {
    "MOCN": _RAN_SHARED + (_E.SPECTRUM_LICENSE,),
    "MOCN + Backhaul": _RAN_SHARED + (_E.BACKHAUL, _E.SPECTRUM_LICENSE),
    "MOCN - Spectrum": _RAN_SHARED + (_E.BACKHAUL,),
    "GWCN": _RAN_SHARED + (_E.SPECTRUM_LICENSE, _E.CORE_SGSN),
    "GWCN + Backhaul": _RAN_SHARED + (_E.BACKHAUL, _E.SPECTRUM_LICENSE, _E.CORE_SGSN),
    "GWCN - Spectrum": _RAN_SHARED + (_E.BACKHAUL, _E.CORE_SGSN),
    "PassiveOnly": (_E.PASSIVE_SITE,),
    "SiteAntenna": (_E.PASSIVE_SITE, _E.ANTENNA),
    "GatewayRoaming": _RAN_SHARED + (_E.BACKHAUL,),
}

PRESET_NAMES: Tuple[str, ...] = tuple(_PRESET_MATRIX)

# Common RAN on dedicated carriers: the MOCN matrix without pooled spectrum
# or shared backhaul.
_ALIASES = {"MORAN": _RAN_SHARED}


def preset(
    name: str,
    operator_count: int = 2,
    split_ratios: Optional[Sequence[float]] = None,
    intl_shared: bool = False,
    couple_site_costs: bool = False,
) -> SharingConfiguration:
    """Build a catalogue configuration by name.

    Defaults: two operators, equal split, international connectivity kept
    separate.  Unknown names raise :class:`UnknownPreset`.
    """
    if name in _PRESET_MATRIX:
        classes = _PRESET_MATRIX[name]
    elif name in _ALIASES:
        classes = _ALIASES[name]
    else:
        raise UnknownPreset(
            f"unknown preset {name!r}; expected one of {list(PRESET_NAMES) + list(_ALIASES)}"
        )
    return SharingConfiguration(
        name=name,
        shared={cls: True for cls in classes},
        operator_count=operator_count,
        split_ratios=tuple(split_ratios) if split_ratios is not None else None,
        intl_shared=intl_shared,
        couple_site_costs=couple_site_costs,
        single_spectrum=(name == "GatewayRoaming"),
    )


def preset_names(include_aliases: bool = False) -> Tuple[str, ...]:
    if include_aliases:
        return PRESET_NAMES + tuple(_ALIASES)
    return PRESET_NAMES


# ---------------------------------------------------------------------------
# Ladder level
# ---------------------------------------------------------------------------


def sharing_level(config: SharingConfiguration) -> LevelAssessment:
    """Highest rung of the sharing ladder the configuration reaches.

    Returns :data:`NO_SHARING` when no ladder-defining class is shared.
    Service flags (international connectivity, coupled site costs) do not
    move the ladder.
    """
    shared_levels = [
        level
        for level, classes in _LEVEL_CLASS.items()
        if any(config.is_shared(c) for c in classes)
    ]
    if not shared_levels:
        return NO_SHARING
    top = max(shared_levels)
    gaps = [
        level
        for level in SharingLevel
        if level < top and level not in shared_levels
    ]
    return LevelAssessment(level=top, non_contiguous=bool(gaps))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    errors: Tuple[ValidationIssue, ...]
    warnings: Tuple[ValidationIssue, ...]

    @property
    def valid(self) -> bool:
        return not self.errors

    def codes(self) -> Tuple[str, ...]:
        return tuple(i.code for i in self.errors + self.warnings)


def validate_configuration(
    config: SharingConfiguration,
    coverage: Optional[Sequence[float]] = None,
    policy: Optional[RegulatoryPolicy] = None,
) -> ValidationReport:
    """Check a configuration against structural and regulatory rules.

    ``coverage`` optionally supplies each operator's own-infrastructure
    population coverage for the minimum-coverage rule.  ``policy`` overrides
    the configuration's attached policy.
    """
    rules = policy if policy is not None else (config.policy or RegulatoryPolicy())
    errors = []
    warnings = []

    core_shared = config.is_shared(_E.CORE_SGSN) or config.is_shared(_E.CORE_GGSN)
    if core_shared and not config.is_shared(_E.RNC):
        errors.append(
            ValidationIssue(
                "GwcnWithoutRan",
                "a shared core gateway requires a shared RNC underneath it",
            )
        )
    if config.is_shared(_E.SPECTRUM_LICENSE) and not rules.spectrum_pooling_allowed:
        errors.append(
            ValidationIssue(
                "SpectrumPoolingForbidden",
                "policy forbids pooling spectrum between the operators",
            )
        )

    assessment = sharing_level(config)
    if rules.max_level is not None and assessment.level is not None:
        if assessment.level > rules.max_level:
            errors.append(
                ValidationIssue(
                    "MaxLevelExceeded",
                    f"configuration reaches {assessment.level.name}, "
                    f"policy allows at most {rules.max_level.name}",
                )
            )
    if assessment.non_contiguous:
        warnings.append(
            ValidationIssue(
                "NonContiguousLadder",
                "sharing skips lower ladder rungs; deployments normally "
                "climb from passive infrastructure upwards",
            )
        )
    if coverage is not None and rules.min_own_coverage_fraction > 0:
        for idx, value in enumerate(coverage):
            if value < rules.min_own_coverage_fraction:
                warnings.append(
                    ValidationIssue(
                        "CoverageBelowMinimum",
                        f"operator {idx} covers {value:.0%} on its own, below the "
                        f"required {rules.min_own_coverage_fraction:.0%}",
                    )
                )
    if config.operator_count > 4:
        warnings.append(
            ValidationIssue(
                "ManyOperators",
                f"{config.operator_count} operators on one element; shared "
                "radio elements typically serve 3 or 4 at most",
            )
        )
    if config.single_spectrum:
        warnings.append(
            ValidationIssue(
                "SingleSpectrumCapacity",
                "running on a single operator's carriers reduces capacity "
                "compared with pooled spectrum",
            )
        )
    return ValidationReport(errors=tuple(errors), warnings=tuple(warnings))
