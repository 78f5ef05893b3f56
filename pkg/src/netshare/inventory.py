"""Network inventories, cost tables and cost-structure constraints.

The unit of account is an element class: a category of network equipment or
recurring expense (sites, antennas, NodeBs, RNCs, backhaul, packet-core
gateways, licences, rent, power, staff).  A :class:`CostTable` assigns each
class a one-off CAPEX amount and an annual OPEX amount for one operator
deploying alone in one area.  Everything downstream (sharing arithmetic,
scenario grids, calibration) consumes these tables.

Cost structures are validated against :class:`RepartitionConstraint` sets:
closed intervals on the fraction each class (or group of classes) takes of a
ledger total.  Default constraint sets describe typical CAPEX/OPEX structures
of emerging and developed markets and the tighter structure used by the
bundled three-area use case.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import InvalidAmount, MissingCostEntry, ZeroTotalLedger

__all__ = [
    "AreaKind",
    "AreaProfile",
    "ConstraintCheck",
    "ConstraintReport",
    "CostEntry",
    "CostTable",
    "ElementClass",
    "Ledger",
    "Market",
    "RepartitionConstraint",
    "RepartitionConstraintSet",
    "build_inventory",
    "check_repartition",
    "default_constraints",
    "default_market_costs",
    "default_profile",
    "DEFAULT_PROFILES",
    "CORE_CLASSES",
    "OVERHEAD_CLASSES",
    "RAN_CLASSES",
    "TRANSPORT_CLASSES",
]


class ElementClass(Enum):
    """Closed enumeration of cost-bearing network element classes."""

    PASSIVE_SITE = "passive_site"
    ANTENNA = "antenna"
    NODEB = "nodeb"
    RNC = "rnc"
    BACKHAUL = "backhaul"
    CORE_SGSN = "core_sgsn"
    CORE_GGSN = "core_ggsn"
    OAM = "oam"
    SPECTRUM_LICENSE = "spectrum_license"
    INTERNATIONAL_CONNECTIVITY = "international_connectivity"
    SITE_RENT = "site_rent"
    POWER = "power"
    STAFF = "staff"

    @classmethod
    def from_label(cls, label: str) -> "ElementClass":
        for member in cls:
            if member.value == label:
                return member
        raise KeyError(f"unknown element class {label!r}")


# Domain partition: every class belongs to exactly one group.
RAN_CLASSES = frozenset(
    {
        ElementClass.PASSIVE_SITE,
        ElementClass.ANTENNA,
        ElementClass.NODEB,
        ElementClass.RNC,
    }
)
TRANSPORT_CLASSES = frozenset(
    {ElementClass.BACKHAUL, ElementClass.INTERNATIONAL_CONNECTIVITY}
)
CORE_CLASSES = frozenset({ElementClass.CORE_SGSN, ElementClass.CORE_GGSN})
OVERHEAD_CLASSES = frozenset(
    {
        ElementClass.OAM,
        ElementClass.SITE_RENT,
        ElementClass.POWER,
        ElementClass.STAFF,
        ElementClass.SPECTRUM_LICENSE,
    }
)


class AreaKind(Enum):
    URBAN = "urban"
    SUBURBAN = "suburban"
    RURAL = "rural"


class Market(Enum):
    EMERGING = "emerging"
    DEVELOPED = "developed"


class Ledger(Enum):
    """Which side of the books a constraint or figure refers to.

    The two USE_CASE members select the tighter constraint profiles observed
    in the bundled three-area deployment study; they still resolve to plain
    CAPEX/OPEX fractions when evaluated.
    """

    CAPEX = "capex"
    OPEX = "opex"
    USE_CASE_CAPEX = "use_case_capex"
    USE_CASE_OPEX = "use_case_opex"

    def base(self) -> "Ledger":
        if self in (Ledger.CAPEX, Ledger.USE_CASE_CAPEX):
            return Ledger.CAPEX
        return Ledger.OPEX


@dataclass(frozen=True)
class CostEntry:
    """One-off CAPEX and annual OPEX for a single element class."""

    capex: float = 0.0
    opex_annual: float = 0.0

    def __post_init__(self) -> None:
        for name in ("capex", "opex_annual"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidAmount(f"{name} must be a number, got {value!r}")
            if value != value or value in (float("inf"), float("-inf")):
                raise InvalidAmount(f"{name} must be finite, got {value!r}")
            if value < 0:
                raise InvalidAmount(f"{name} must be >= 0, got {value!r}")


def _normalise_entry(value: Union["CostEntry", Tuple[float, float]]) -> CostEntry:
    if isinstance(value, CostEntry):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return CostEntry(float(value[0]), float(value[1]))
    raise InvalidAmount(f"cost entry must be CostEntry or (capex, opex) pair, got {value!r}")


@dataclass(frozen=True)
class CostTable:
    """Per-class cost amounts for one operator deploying alone in one area.

    Missing classes are filled with zero-cost entries so that every table
    covers the full enumeration.  Amounts are in an arbitrary but consistent
    currency unit; all downstream results are relative, so only the shape of
    the table matters.
    """

    area: AreaKind
    entries: Mapping[ElementClass, CostEntry] = field(default_factory=dict)
    currency: str = "units"

    def __post_init__(self) -> None:
        filled = {}
        for cls in ElementClass:
            filled[cls] = _normalise_entry(self.entries.get(cls, CostEntry()))
        unknown = set(self.entries) - set(ElementClass)
        if unknown:
            raise InvalidAmount(f"unknown element classes in cost table: {sorted(unknown)!r}")
        object.__setattr__(self, "entries", filled)

    # -- totals ---------------------------------------------------------

    def capex_total(self) -> float:
        return sum(e.capex for e in self.entries.values())

    def opex_annual_total(self) -> float:
        return sum(e.opex_annual for e in self.entries.values())

    def is_usable(self) -> bool:
        """A table with no cost at all cannot support savings figures."""
        return self.capex_total() > 0 or self.opex_annual_total() > 0

    # -- fractions ------------------------------------------------------

    def ledger_total(self, ledger: Ledger) -> float:
        if ledger.base() is Ledger.CAPEX:
            return self.capex_total()
        return self.opex_annual_total()

    def ledger_amount(self, cls: ElementClass, ledger: Ledger) -> float:
        entry = self.entries[cls]
        return entry.capex if ledger.base() is Ledger.CAPEX else entry.opex_annual

    def fraction(self, classes: Iterable[ElementClass], ledger: Ledger) -> float:
        """Fraction of the ledger total carried by ``classes`` together."""
        total = self.ledger_total(ledger)
        if total == 0:
            raise ZeroTotalLedger(
                f"{ledger.base().value} total is zero for area {self.area.value}"
            )
        return sum(self.ledger_amount(c, ledger) for c in classes) / total

    def fractions(self, ledger: Ledger) -> Mapping[ElementClass, float]:
        return {cls: self.fraction((cls,), ledger) for cls in ElementClass}

    def scaled(self, factor: float) -> "CostTable":
        if factor < 0:
            raise InvalidAmount(f"scale factor must be >= 0, got {factor!r}")
        return CostTable(
            area=self.area,
            entries={
                cls: CostEntry(e.capex * factor, e.opex_annual * factor)
                for cls, e in self.entries.items()
            },
            currency=self.currency,
        )

    # -- serialisation --------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "area": self.area.value,
            "currency": self.currency,
            "entries": {
                cls.value: {"capex": e.capex, "opex_annual": e.opex_annual}
                for cls, e in self.entries.items()
                if e.capex != 0 or e.opex_annual != 0
            },
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "CostTable":
        if not isinstance(doc, Mapping):
            raise InvalidAmount(f"cost table document must be an object, got {type(doc).__name__}")
        allowed = {"area", "currency", "entries"}
        unknown = set(doc) - allowed
        if unknown:
            raise InvalidAmount(f"unknown cost table keys: {sorted(unknown)!r}")
        try:
            area = AreaKind(doc["area"])
        except (KeyError, ValueError) as exc:
            raise InvalidAmount(f"cost table needs a valid 'area': {exc}") from exc
        entries = {}
        raw = doc.get("entries", {})
        if not isinstance(raw, Mapping):
            raise InvalidAmount("'entries' must be an object keyed by element class")
        for label, payload in raw.items():
            try:
                key = ElementClass.from_label(label)
            except KeyError as exc:
                raise InvalidAmount(str(exc)) from exc
            if not isinstance(payload, Mapping) or set(payload) - {"capex", "opex_annual"}:
                raise InvalidAmount(
                    f"entry for {label!r} must be an object with keys capex/opex_annual"
                )
            entries[key] = CostEntry(
                float(payload.get("capex", 0.0)), float(payload.get("opex_annual", 0.0))
            )
        return cls(area=area, entries=entries, currency=str(doc.get("currency", "units")))

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=False)


@dataclass(frozen=True)
class AreaProfile:
    """Deployment footprint of one operator in one area type.

    Default counts follow a reference national deployment in which every
    area is engineered to carry the same subscriber load, so the NodeB count
    varies with radio conditions (dense urban clutter, sparse rural
    coverage-limited cells) while core elements stay at one per area.
    """

    kind: AreaKind
    nodeb_count: int = 1
    subscriber_count: int = 17700
    rnc_count: int = 1
    sgsn_count: int = 1
    ggsn_count: int = 1

    def __post_init__(self) -> None:
        for name in ("nodeb_count", "rnc_count", "sgsn_count", "ggsn_count"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidAmount(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.subscriber_count, int) or self.subscriber_count < 0:
            raise InvalidAmount(
                f"subscriber_count must be a non-negative integer, got {self.subscriber_count!r}"
            )

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "nodeb_count": self.nodeb_count,
            "subscriber_count": self.subscriber_count,
            "rnc_count": self.rnc_count,
            "sgsn_count": self.sgsn_count,
            "ggsn_count": self.ggsn_count,
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "AreaProfile":
        allowed = {
            "kind",
            "nodeb_count",
            "subscriber_count",
            "rnc_count",
            "sgsn_count",
            "ggsn_count",
        }
        unknown = set(doc) - allowed
        if unknown:
            raise InvalidAmount(f"unknown area profile keys: {sorted(unknown)!r}")
        try:
            kind = AreaKind(doc["kind"])
        except (KeyError, ValueError) as exc:
            raise InvalidAmount(f"area profile needs a valid 'kind': {exc}") from exc
        base = default_profile(kind)
        return cls(
            kind=kind,
            nodeb_count=doc.get("nodeb_count", base.nodeb_count),
            subscriber_count=doc.get("subscriber_count", base.subscriber_count),
            rnc_count=doc.get("rnc_count", base.rnc_count),
            sgsn_count=doc.get("sgsn_count", base.sgsn_count),
            ggsn_count=doc.get("ggsn_count", base.ggsn_count),
        )


# Reference deployment: equal subscriber load per area, NodeB count set by
# radio planning (urban capacity-limited, rural coverage-limited).
DEFAULT_PROFILES: Mapping[AreaKind, AreaProfile] = {
    AreaKind.URBAN: AreaProfile(kind=AreaKind.URBAN, nodeb_count=78),
    AreaKind.SUBURBAN: AreaProfile(kind=AreaKind.SUBURBAN, nodeb_count=58),
    AreaKind.RURAL: AreaProfile(kind=AreaKind.RURAL, nodeb_count=108),
}


def default_profile(kind: AreaKind) -> AreaProfile:
    return DEFAULT_PROFILES[kind]


# Classes whose total cost scales with a per-area equipment count.  Site
# classes (civil works, rent, power) scale with the site count, for which the
# NodeB count is the proxy: one NodeB per site in the reference deployment.
_SCALED_BY = {
    ElementClass.NODEB: "nodeb_count",
    ElementClass.RNC: "rnc_count",
    ElementClass.CORE_SGSN: "sgsn_count",
    ElementClass.CORE_GGSN: "ggsn_count",
    ElementClass.PASSIVE_SITE: "nodeb_count",
    ElementClass.ANTENNA: "nodeb_count",
    ElementClass.SITE_RENT: "nodeb_count",
    ElementClass.POWER: "nodeb_count",
}


def element_quantity(cls: ElementClass, profile: AreaProfile) -> int:
    """How many units of ``cls`` the profile deploys (1 for area-wide items)."""
    attr = _SCALED_BY.get(cls)
    return getattr(profile, attr) if attr else 1


def build_inventory(
    profile: AreaProfile,
    unit_costs: Mapping[ElementClass, Union[CostEntry, Tuple[float, float]]],
    currency: str = "units",
) -> CostTable:
    """Expand per-unit costs into a full area cost table.

    Scaled classes (NodeB, RNC, core gateways and the per-site classes) must
    carry a unit cost; area-wide classes may be omitted and default to zero.
    """
    entries = {}
    for cls in ElementClass:
        qty = element_quantity(cls, profile)
        if cls in unit_costs:
            unit = _normalise_entry(unit_costs[cls])
        elif cls in _SCALED_BY:
            raise MissingCostEntry(
                f"no unit cost for scaled class {cls.value!r} "
                f"(quantity {qty} in {profile.kind.value})"
            )
        else:
            unit = CostEntry()
        entries[cls] = CostEntry(unit.capex * qty, unit.opex_annual * qty)
    unknown = set(unit_costs) - set(ElementClass)
    if unknown:
        raise InvalidAmount(f"unknown element classes in unit costs: {sorted(unknown)!r}")
    return CostTable(area=profile.kind, entries=entries, currency=currency)


# ---------------------------------------------------------------------------
# Repartition constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepartitionConstraint:
    """Closed interval on the ledger fraction carried by a class group.

    ``area`` narrows the constraint to one area kind; ``None`` applies to
    every area.  Bounds are fractions in [0, 1] with ``lower <= upper``.
    """

    label: str
    ledger: Ledger
    classes: frozenset
    lower: float
    upper: float
    area: Optional[AreaKind] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", frozenset(self.classes))
        if not self.classes:
            raise InvalidAmount(f"constraint {self.label!r} must name at least one class")
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise InvalidAmount(
                f"constraint {self.label!r} needs 0 <= lower <= upper <= 1, "
                f"got [{self.lower}, {self.upper}]"
            )

    def applies_to(self, area: AreaKind) -> bool:
        return self.area is None or self.area is area

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "ledger": self.ledger.base().value,
            "classes": sorted(c.value for c in self.classes),
            "lower": self.lower,
            "upper": self.upper,
            "area": self.area.value if self.area else None,
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "RepartitionConstraint":
        allowed = {"label", "ledger", "classes", "lower", "upper", "area"}
        unknown = set(doc) - allowed
        if unknown:
            raise InvalidAmount(f"unknown constraint keys: {sorted(unknown)!r}")
        return cls(
            label=str(doc["label"]),
            ledger=Ledger(doc["ledger"]),
            classes=frozenset(ElementClass.from_label(v) for v in doc["classes"]),
            lower=float(doc["lower"]),
            upper=float(doc["upper"]),
            area=AreaKind(doc["area"]) if doc.get("area") else None,
        )


@dataclass(frozen=True)
class RepartitionConstraintSet:
    """Named, ordered collection of repartition constraints."""

    name: str
    constraints: Tuple[RepartitionConstraint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple(self.constraints))

    def for_area(self, area: AreaKind) -> Tuple[RepartitionConstraint, ...]:
        return tuple(c for c in self.constraints if c.applies_to(area))

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "constraints": [c.to_json_dict() for c in self.constraints],
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "RepartitionConstraintSet":
        return cls(
            name=str(doc.get("name", "unnamed")),
            constraints=tuple(
                RepartitionConstraint.from_json_dict(c) for c in doc.get("constraints", ())
            ),
        )


@dataclass(frozen=True)
class ConstraintCheck:
    constraint: RepartitionConstraint
    observed: float  # rounded to 4 decimals for reporting
    satisfied: bool


@dataclass(frozen=True)
class ConstraintReport:
    checks: Tuple[ConstraintCheck, ...]
    overall: bool

    def failures(self) -> Tuple[ConstraintCheck, ...]:
        return tuple(c for c in self.checks if not c.satisfied)


_FRACTION_TOL = 1e-9


def check_repartition(
    table: CostTable, constraints: Union[RepartitionConstraintSet, Sequence[RepartitionConstraint]]
) -> ConstraintReport:
    """Evaluate every applicable constraint against the table's fractions.

    Constraints scoped to a different area are skipped.  Referencing a ledger
    whose total is zero raises :class:`ZeroTotalLedger`.
    """
    checks = []
    for constraint in constraints:
        if not constraint.applies_to(table.area):
            continue
        observed = table.fraction(constraint.classes, constraint.ledger)
        ok = constraint.lower - _FRACTION_TOL <= observed <= constraint.upper + _FRACTION_TOL
        checks.append(ConstraintCheck(constraint, round(observed, 4), ok))
    return ConstraintReport(checks=tuple(checks), overall=all(c.satisfied for c in checks))


# ---------------------------------------------------------------------------
# Default constraint catalogues
# ---------------------------------------------------------------------------

_E = ElementClass
_ALL = None  # constraint applies to every area


def _c(label, ledger, classes, lower, upper, area=_ALL):
    return RepartitionConstraint(
        label=label,
        ledger=ledger,
        classes=frozenset(classes),
        lower=lower,
        upper=upper,
        area=area,
    )


# Coarse market-level cost structures.  Intervals are +/- 2 points around the
# headline shares of the respective market profile.
_EMERGING_CAPEX = (
    _c("civil_site_share", Ledger.CAPEX, {_E.PASSIVE_SITE}, 0.39, 0.43),
    _c("power_share", Ledger.CAPEX, {_E.POWER}, 0.29, 0.33),
    _c("nodeb_share", Ledger.CAPEX, {_E.NODEB}, 0.13, 0.17),
)
_DEVELOPED_CAPEX = (
    _c("civil_site_share", Ledger.CAPEX, {_E.PASSIVE_SITE}, 0.50, 0.54),
)
_EMERGING_OPEX = (
    _c("support_share", Ledger.OPEX, {_E.OAM}, 0.18, 0.22),
    _c("power_share", Ledger.OPEX, {_E.POWER}, 0.18, 0.22),
    _c("land_rent_share", Ledger.OPEX, {_E.SITE_RENT}, 0.13, 0.17),
    _c("backhaul_share", Ledger.OPEX, {_E.BACKHAUL}, 0.12, 0.16),
)
_DEVELOPED_OPEX = (
    _c("land_rent_share", Ledger.OPEX, {_E.SITE_RENT}, 0.40, 0.44),
)

# Tighter structure of the bundled three-area use case.  RNC weight drops in
# the rural area, where a coverage-driven NodeB grid dominates radio CAPEX.
_USE_CASE_CAPEX = (
    _c("core_share", Ledger.CAPEX, {_E.CORE_SGSN, _E.CORE_GGSN}, 0.08, 0.17),
    _c("oam_share", Ledger.CAPEX, {_E.OAM}, 0.08, 0.17),
    _c("backhaul_share", Ledger.CAPEX, {_E.BACKHAUL}, 0.32, 0.41),
    _c("nodeb_share", Ledger.CAPEX, {_E.NODEB}, 0.23, 0.29),
    _c("rnc_share_urban", Ledger.CAPEX, {_E.RNC}, 0.32, 0.41, AreaKind.URBAN),
    _c("rnc_share_suburban", Ledger.CAPEX, {_E.RNC}, 0.32, 0.41, AreaKind.SUBURBAN),
    _c("rnc_share_rural", Ledger.CAPEX, {_E.RNC}, 0.09, 0.13, AreaKind.RURAL),
)
_USE_CASE_OPEX = (
    _c(
        "international_share",
        Ledger.OPEX,
        {_E.INTERNATIONAL_CONNECTIVITY},
        0.50,
        0.60,
    ),
    _c(
        "licence_core_share",
        Ledger.OPEX,
        {_E.SPECTRUM_LICENSE, _E.CORE_SGSN, _E.CORE_GGSN},
        0.08,
        0.12,
    ),
)

_CATALOGUE = {
    (Market.EMERGING, Ledger.CAPEX): ("emerging_capex", _EMERGING_CAPEX),
    (Market.EMERGING, Ledger.OPEX): ("emerging_opex", _EMERGING_OPEX),
    (Market.DEVELOPED, Ledger.CAPEX): ("developed_capex", _DEVELOPED_CAPEX),
    (Market.DEVELOPED, Ledger.OPEX): ("developed_opex", _DEVELOPED_OPEX),
}


def default_constraints(market: Market, ledger: Ledger) -> RepartitionConstraintSet:
    """Published cost-structure envelope for a market profile and ledger.

    ``Ledger.USE_CASE_CAPEX``/``USE_CASE_OPEX`` return the tighter intervals
    of the bundled three-area use case regardless of market.
    """
    if ledger is Ledger.USE_CASE_CAPEX:
        return RepartitionConstraintSet("use_case_capex", _USE_CASE_CAPEX)
    if ledger is Ledger.USE_CASE_OPEX:
        return RepartitionConstraintSet("use_case_opex", _USE_CASE_OPEX)
    name, constraints = _CATALOGUE[(market, ledger)]
    return RepartitionConstraintSet(name, constraints)


# Representative whole-market cost tables.  CAPEX shares in an emerging
# market are dominated by civil works and power infrastructure; developed
# markets spend over half of OPEX-side cash on land rent instead.  Amounts
# are expressed on a 100 000-unit CAPEX base.
_MARKET_SHAPES = {
    Market.EMERGING: {
        "capex": {
            _E.PASSIVE_SITE: 0.41,
            _E.POWER: 0.31,
            _E.NODEB: 0.15,
            _E.ANTENNA: 0.01,
            _E.RNC: 0.04,
            _E.BACKHAUL: 0.05,
            _E.CORE_SGSN: 0.01,
            _E.CORE_GGSN: 0.01,
            _E.OAM: 0.01,
        },
        "opex": {
            _E.OAM: 0.20,
            _E.POWER: 0.20,
            _E.SITE_RENT: 0.15,
            _E.BACKHAUL: 0.14,
            _E.STAFF: 0.12,
            _E.INTERNATIONAL_CONNECTIVITY: 0.10,
            _E.SPECTRUM_LICENSE: 0.05,
            _E.NODEB: 0.04,
        },
    },
    Market.DEVELOPED: {
        "capex": {
            _E.PASSIVE_SITE: 0.52,
            _E.NODEB: 0.12,
            _E.RNC: 0.06,
            _E.BACKHAUL: 0.10,
            _E.POWER: 0.08,
            _E.CORE_SGSN: 0.03,
            _E.CORE_GGSN: 0.03,
            _E.OAM: 0.06,
        },
        "opex": {
            _E.SITE_RENT: 0.42,
            _E.OAM: 0.14,
            _E.BACKHAUL: 0.10,
            _E.STAFF: 0.10,
            _E.POWER: 0.08,
            _E.INTERNATIONAL_CONNECTIVITY: 0.08,
            _E.SPECTRUM_LICENSE: 0.04,
            _E.NODEB: 0.04,
        },
    },
}

_MARKET_CAPEX_BASE = 100_000.0
_MARKET_OPEX_BASE = 40_000.0  # annual


def default_market_costs(market: Market, area: AreaKind = AreaKind.URBAN) -> CostTable:
    """Representative cost table matching the market's default constraints."""
    shape = _MARKET_SHAPES[market]
    entries = {}
    for cls in ElementClass:
        capex = shape["capex"].get(cls, 0.0) * _MARKET_CAPEX_BASE
        opex = shape["opex"].get(cls, 0.0) * _MARKET_OPEX_BASE
        if capex or opex:
            entries[cls] = CostEntry(capex, opex)
    return CostTable(area=area, entries=entries)
