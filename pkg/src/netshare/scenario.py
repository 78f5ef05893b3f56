"""Scenario documents: load, validate, run grids and parameter sweeps.

A scenario bundles area profiles, their cost tables, a list of sharing
configurations and a planning horizon.  Running it produces one savings
report per (area, configuration) cell.  An optional sweep varies a single
parameter over a range and re-runs the grid at every point.

Scenario documents are strict JSON: unknown keys are rejected rather than
ignored, so typos fail loudly instead of silently changing results.  Cost
tables may be inlined or referenced by file name; references resolve against
the scenario's own directory first, then the fixture directory (bundled, or
overridden through the ``NETSHARE_FIXTURES`` environment variable).
"""

from __future__ import annotations

import importlib.resources
import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Optional, Sequence, Tuple, Union

from .costmodel import (
    DEFAULT_HORIZON_YEARS,
    SavingsReport,
    apply_sharing,
    cumulative_cost,
    savings_report,
)
from .errors import (
    InvalidHorizon,
    InvalidScenario,
    InvalidSweepParameter,
    MalformedScenario,
    NetshareError,
)
from .inventory import AreaKind, AreaProfile, CostTable, default_profile
from .sharing import (
    RegulatoryPolicy,
    SharingConfiguration,
    SharingLevel,
    ValidationReport,
    preset,
    validate_configuration,
)

__all__ = [
    "Scenario",
    "ScenarioResult",
    "SweepPoint",
    "SweepResult",
    "SweepSpec",
    "fixture_dir",
    "fixture_path",
    "load_scenario",
    "load_scenario_file",
    "reference_cost_table",
    "run_scenario",
    "sweep",
    "SWEEP_PARAMETERS",
]

SWEEP_PARAMETERS = ("split_ratio", "horizon_years", "intl_shared", "class_cost_fraction")


# ---------------------------------------------------------------------------
# Fixture resolution
# ---------------------------------------------------------------------------


def fixture_dir() -> Path:
    """Directory holding bundled data files, unless overridden by env var."""
    override = os.environ.get("NETSHARE_FIXTURES")
    if override:
        return Path(override)
    return Path(str(importlib.resources.files("netshare").joinpath("fixtures")))


def fixture_path(name: str, base_dir: Optional[Path] = None) -> Path:
    """Resolve a data file name against base_dir, cwd, then the fixture dir."""
    candidates = []
    raw = Path(name)
    if raw.is_absolute():
        candidates.append(raw)
    else:
        if base_dir is not None:
            candidates.append(Path(base_dir) / raw)
        candidates.append(raw)
        candidates.append(fixture_dir() / raw)
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    raise MalformedScenario(
        f"file {name!r} not found (searched {[str(c) for c in candidates]})"
    )


def reference_cost_table(kind: AreaKind) -> CostTable:
    """Calibrated reference cost table bundled for each area kind."""
    path = fixture_path(f"reference_costs_{kind.value}.json")
    return CostTable.from_json_dict(_read_json(path))


def _read_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedScenario(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedScenario(
            f"{path.name}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


# ---------------------------------------------------------------------------
# Sweep specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """Single-parameter range to re-run the grid over.

    ``parameter`` is one of :data:`SWEEP_PARAMETERS`; ``class_name`` is
    required (as an element-class label) only for ``class_cost_fraction``.
    """

    parameter: str
    start: float
    stop: float
    steps: int
    class_name: Optional[str] = None

    def __post_init__(self) -> None:
        if self.parameter not in SWEEP_PARAMETERS:
            raise InvalidSweepParameter(
                f"unknown sweep parameter {self.parameter!r}; "
                f"expected one of {list(SWEEP_PARAMETERS)}"
            )
        if not isinstance(self.steps, int) or self.steps < 2:
            raise InvalidSweepParameter(f"steps must be an integer >= 2, got {self.steps!r}")
        if self.steps > 10_000:
            raise InvalidSweepParameter(f"steps must be <= 10000, got {self.steps!r}")
        if not (self.start < self.stop):
            raise InvalidSweepParameter(
                f"sweep range must satisfy from < to, got [{self.start}, {self.stop}]"
            )
        if self.parameter == "class_cost_fraction" and not self.class_name:
            raise InvalidSweepParameter("class_cost_fraction sweeps need a 'class'")
        if self.parameter != "class_cost_fraction" and self.class_name:
            raise InvalidSweepParameter(
                f"'class' only applies to class_cost_fraction, not {self.parameter!r}"
            )

    def values(self) -> Tuple[float, ...]:
        span = self.stop - self.start
        raw = [self.start + span * i / (self.steps - 1) for i in range(self.steps)]
        if self.parameter == "horizon_years":
            ints = sorted({int(round(v)) for v in raw})
            return tuple(float(v) for v in ints)
        return tuple(raw)

    def to_json_dict(self) -> dict:
        doc = {
            "parameter": self.parameter,
            "from": self.start,
            "to": self.stop,
            "steps": self.steps,
        }
        if self.class_name:
            doc["class"] = self.class_name
        return doc

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "SweepSpec":
        allowed = {"parameter", "from", "to", "steps", "class"}
        unknown = set(doc) - allowed
        if unknown:
            raise MalformedScenario(f"unknown sweep keys: {sorted(unknown)!r}")
        missing = {"parameter", "from", "to", "steps"} - set(doc)
        if missing:
            raise MalformedScenario(f"sweep needs keys: {sorted(missing)!r}")
        return cls(
            parameter=str(doc["parameter"]),
            start=float(doc["from"]),
            stop=float(doc["to"]),
            steps=doc["steps"],
            class_name=doc.get("class"),
        )


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    """Immutable bundle of everything one model run needs."""

    name: str
    areas: Tuple[AreaProfile, ...]
    cost_tables: Mapping[AreaKind, CostTable]
    configurations: Tuple[SharingConfiguration, ...]
    horizon_years: int = DEFAULT_HORIZON_YEARS
    policy: Optional[RegulatoryPolicy] = None
    sweep: Optional[SweepSpec] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "areas", tuple(self.areas))
        object.__setattr__(self, "configurations", tuple(self.configurations))
        object.__setattr__(self, "cost_tables", dict(self.cost_tables))
        if not self.areas:
            raise InvalidScenario(f"scenario {self.name!r} lists no areas")
        if not self.configurations:
            raise InvalidScenario(f"scenario {self.name!r} lists no configurations")
        if not isinstance(self.horizon_years, int) or self.horizon_years < 1:
            raise InvalidHorizon(
                f"horizon_years must be a positive integer, got {self.horizon_years!r}"
            )
        kinds = [p.kind for p in self.areas]
        if len(set(kinds)) != len(kinds):
            raise InvalidScenario(f"scenario {self.name!r} repeats an area kind")
        names = [c.name for c in self.configurations]
        if len(set(names)) != len(names):
            raise InvalidScenario(f"scenario {self.name!r} repeats a configuration name")
        for profile in self.areas:
            table = self.cost_tables.get(profile.kind)
            if table is None:
                raise InvalidScenario(
                    f"scenario {self.name!r} has no cost table for {profile.kind.value}"
                )
            if table.area is not profile.kind:
                raise InvalidScenario(
                    f"cost table for {profile.kind.value} is labelled {table.area.value}"
                )

    def validation_reports(self) -> Mapping[str, ValidationReport]:
        """Validation report per configuration under the scenario policy."""
        return {
            config.name: validate_configuration(config, policy=self.policy)
            for config in self.configurations
        }


@dataclass(frozen=True)
class ScenarioResult:
    """Savings reports for every (area, configuration) grid cell."""

    scenario_name: str
    horizon_years: int
    area_order: Tuple[AreaKind, ...]
    configuration_order: Tuple[str, ...]
    grid: Mapping[Tuple[AreaKind, str], SavingsReport]

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", dict(self.grid))

    def report(self, area: AreaKind, configuration: str) -> SavingsReport:
        return self.grid[(area, configuration)]

    def reports(self) -> Tuple[SavingsReport, ...]:
        """Grid cells in deterministic scenario order (areas outer)."""
        return tuple(
            self.grid[(area, name)]
            for area in self.area_order
            for name in self.configuration_order
        )

    def best_configuration(self, area: AreaKind) -> SavingsReport:
        """Cell with the highest total saving in the area (first wins ties)."""
        best = None
        for name in self.configuration_order:
            candidate = self.grid[(area, name)]
            if best is None or candidate.total_saving_pct > best.total_saving_pct + 1e-12:
                best = candidate
        return best


def run_scenario(scenario: Scenario) -> ScenarioResult:
    """Evaluate every grid cell of the scenario.

    Configuration validation errors abort the run; cost-model errors are
    re-raised annotated with the grid cell that produced them.
    """
    reports = scenario.validation_reports()
    failed = {name: rep for name, rep in reports.items() if not rep.valid}
    if failed:
        detail = "; ".join(
            f"{name}: {', '.join(i.code for i in rep.errors)}" for name, rep in failed.items()
        )
        raise InvalidScenario(
            f"scenario {scenario.name!r} has invalid configurations ({detail})",
            reports=list(failed.values()),
        )
    grid = {}
    for profile in scenario.areas:
        table = scenario.cost_tables[profile.kind]
        baseline = cumulative_cost(table, scenario.horizon_years)
        for config in scenario.configurations:
            try:
                shared = apply_sharing(baseline, config)
                grid[(profile.kind, config.name)] = savings_report(baseline, shared, config)
            except NetshareError as exc:
                raise type(exc)(
                    f"[area={profile.kind.value} configuration={config.name}] {exc}"
                ) from exc
    return ScenarioResult(
        scenario_name=scenario.name,
        horizon_years=scenario.horizon_years,
        area_order=tuple(p.kind for p in scenario.areas),
        configuration_order=tuple(c.name for c in scenario.configurations),
        grid=grid,
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    value: float
    result: ScenarioResult


@dataclass(frozen=True)
class SweepResult:
    scenario_name: str
    parameter: str
    class_name: Optional[str]
    points: Tuple[SweepPoint, ...]


def _swept_scenario(scenario: Scenario, spec: SweepSpec, value: float) -> Scenario:
    if spec.parameter == "horizon_years":
        return replace(scenario, horizon_years=int(value), sweep=None)

    if spec.parameter == "split_ratio":
        if not (0.0 < value < 1.0):
            raise InvalidSweepParameter(f"split_ratio values must lie in (0, 1), got {value}")
        configs = []
        for config in scenario.configurations:
            rest = (1.0 - value) / (config.operator_count - 1)
            ratios = (value,) + (rest,) * (config.operator_count - 1)
            configs.append(replace(config, split_ratios=ratios))
        return replace(scenario, configurations=tuple(configs), sweep=None)

    if spec.parameter == "intl_shared":
        flag = value >= 0.5
        configs = tuple(replace(c, intl_shared=flag) for c in scenario.configurations)
        return replace(scenario, configurations=configs, sweep=None)

    # class_cost_fraction: rescale one class so it takes the requested
    # fraction of each area's cumulative grand total.
    if not (0.0 < value < 1.0):
        raise InvalidSweepParameter(
            f"class_cost_fraction values must lie in (0, 1), got {value}"
        )
    from .inventory import CostEntry, ElementClass

    try:
        cls = ElementClass.from_label(spec.class_name)
    except KeyError as exc:
        raise InvalidSweepParameter(str(exc)) from exc
    tables = {}
    for kind, table in scenario.cost_tables.items():
        h = scenario.horizon_years
        entry = table.entries[cls]
        class_grand = entry.capex + entry.opex_annual * h
        grand = table.capex_total() + table.opex_annual_total() * h
        others = grand - class_grand
        if class_grand <= 0 or others <= 0:
            raise InvalidSweepParameter(
                f"class {spec.class_name!r} cannot be rescaled in area {kind.value}: "
                "it or the rest of the table carries no cost"
            )
        factor = (value * others / (1.0 - value)) / class_grand
        entries = dict(table.entries)
        entries[cls] = CostEntry(entry.capex * factor, entry.opex_annual * factor)
        tables[kind] = CostTable(area=table.area, entries=entries, currency=table.currency)
    return replace(scenario, cost_tables=tables, sweep=None)


def sweep(scenario: Scenario, spec: Optional[SweepSpec] = None) -> SweepResult:
    """Re-run the scenario grid at every point of the sweep range.

    Points come back strictly ordered by parameter value with no
    duplicates.
    """
    spec = spec if spec is not None else scenario.sweep
    if spec is None:
        raise InvalidSweepParameter(f"scenario {scenario.name!r} has no sweep specification")
    points = []
    for value in spec.values():
        result = run_scenario(_swept_scenario(scenario, spec, value))
        points.append(SweepPoint(value=value, result=result))
    values = [p.value for p in points]
    assert values == sorted(set(values)), "sweep values must be strictly increasing"
    return SweepResult(
        scenario_name=scenario.name,
        parameter=spec.parameter,
        class_name=spec.class_name,
        points=tuple(points),
    )


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

_TOP_LEVEL_KEYS = {
    "name",
    "horizon_years",
    "areas",
    "cost_tables",
    "configurations",
    "policy",
    "sweep",
    "couple_site_costs",
}
_POLICY_KEYS = {"min_own_coverage_fraction", "spectrum_pooling_allowed", "max_level"}


def _parse_policy(doc: Mapping) -> RegulatoryPolicy:
    unknown = set(doc) - _POLICY_KEYS
    if unknown:
        raise MalformedScenario(f"unknown policy keys: {sorted(unknown)!r}")
    max_level = None
    if doc.get("max_level") is not None:
        label = str(doc["max_level"])
        try:
            max_level = SharingLevel[label]
        except KeyError as exc:
            raise MalformedScenario(
                f"unknown max_level {label!r}; expected one of "
                f"{[lvl.name for lvl in SharingLevel]}"
            ) from exc
    return RegulatoryPolicy(
        min_own_coverage_fraction=float(doc.get("min_own_coverage_fraction", 0.0)),
        spectrum_pooling_allowed=bool(doc.get("spectrum_pooling_allowed", True)),
        max_level=max_level,
    )


def _parse_area(doc: Union[str, Mapping]) -> AreaProfile:
    if isinstance(doc, str):
        try:
            return default_profile(AreaKind(doc))
        except ValueError as exc:
            raise MalformedScenario(f"unknown area kind {doc!r}") from exc
    if isinstance(doc, Mapping):
        try:
            return AreaProfile.from_json_dict(doc)
        except NetshareError as exc:
            raise MalformedScenario(str(exc)) from exc
    raise MalformedScenario(f"area must be a kind string or an object, got {doc!r}")


def _parse_configuration(doc: Union[str, Mapping], couple_site_costs: bool) -> SharingConfiguration:
    if isinstance(doc, str):
        return preset(doc, couple_site_costs=couple_site_costs)
    if isinstance(doc, Mapping):
        config = SharingConfiguration.from_json_dict(doc)
        if couple_site_costs and not config.couple_site_costs:
            config = replace(config, couple_site_costs=True)
        return config
    raise MalformedScenario(f"configuration must be a preset name or an object, got {doc!r}")


def _parse_cost_table(
    kind: AreaKind, doc: Union[str, Mapping], base_dir: Optional[Path]
) -> CostTable:
    if isinstance(doc, str):
        payload = _read_json(fixture_path(doc, base_dir))
    elif isinstance(doc, Mapping):
        payload = doc
    else:
        raise MalformedScenario(
            f"cost table for {kind.value!r} must be a file name or an object, got {doc!r}"
        )
    try:
        return CostTable.from_json_dict(payload)
    except NetshareError as exc:
        raise MalformedScenario(f"cost table for {kind.value!r}: {exc}") from exc


def load_scenario(document: Union[str, Mapping], base_dir: Optional[Path] = None) -> Scenario:
    """Parse and validate a scenario document (JSON text or parsed object).

    Raises :class:`MalformedScenario` for JSON or schema problems and
    :class:`InvalidScenario` when the parsed scenario fails semantic
    validation (no configurations, configuration errors under the policy).
    """
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedScenario(
                f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    else:
        doc = document
    if not isinstance(doc, Mapping):
        raise MalformedScenario(f"scenario document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - _TOP_LEVEL_KEYS
    if unknown:
        raise MalformedScenario(f"unknown scenario keys: {sorted(unknown)!r}")
    missing = {"name", "areas", "cost_tables", "configurations"} - set(doc)
    if missing:
        raise MalformedScenario(f"scenario needs keys: {sorted(missing)!r}")

    couple = bool(doc.get("couple_site_costs", False))
    areas = tuple(_parse_area(a) for a in doc["areas"])
    raw_tables = doc["cost_tables"]
    if not isinstance(raw_tables, Mapping):
        raise MalformedScenario("'cost_tables' must map area kinds to tables")
    tables = {}
    for key, value in raw_tables.items():
        try:
            kind = AreaKind(key)
        except ValueError as exc:
            raise MalformedScenario(f"unknown area kind {key!r} in cost_tables") from exc
        tables[kind] = _parse_cost_table(kind, value, base_dir)
    try:
        configurations = tuple(
            _parse_configuration(c, couple) for c in doc["configurations"]
        )
    except NetshareError:
        raise
    policy = _parse_policy(doc["policy"]) if doc.get("policy") is not None else None
    sweep_spec = (
        SweepSpec.from_json_dict(doc["sweep"]) if doc.get("sweep") is not None else None
    )
    horizon = doc.get("horizon_years", DEFAULT_HORIZON_YEARS)
    if not isinstance(horizon, int) or isinstance(horizon, bool):
        raise MalformedScenario(f"horizon_years must be an integer, got {horizon!r}")

    scenario = Scenario(
        name=str(doc["name"]),
        areas=areas,
        cost_tables=tables,
        configurations=configurations,
        horizon_years=horizon,
        policy=policy,
        sweep=sweep_spec,
    )
    reports = scenario.validation_reports()
    failed = {name: rep for name, rep in reports.items() if not rep.valid}
    if failed:
        detail = "; ".join(
            f"{name}: {', '.join(i.code for i in rep.errors)}" for name, rep in failed.items()
        )
        raise InvalidScenario(
            f"scenario {scenario.name!r} has invalid configurations ({detail})",
            reports=list(failed.values()),
        )
    return scenario


def load_scenario_file(path: Union[str, Path]) -> Scenario:
    """Load a scenario from a file, resolving it like a fixture name."""
    resolved = fixture_path(str(path))
    text = resolved.read_text(encoding="utf-8")
    return load_scenario(text, base_dir=resolved.parent)
