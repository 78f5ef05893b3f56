"""Cumulative cost arithmetic and per-operator savings reports.

Costs accumulate linearly: each element class contributes its CAPEX once and
its annual OPEX for every year of the planning horizon, with no discounting.
Sharing replaces an operator's full cost for a shared class by its split
ratio of that cost; everything unshared is carried alone.  With two
operators on an equal split, sharing a class therefore saves exactly half of
that class's cost, which caps the achievable saving at 50 percent.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from .errors import (
    AreaMismatch,
    HorizonMismatch,
    InvalidAmount,
    InvalidHorizon,
    InvalidOperatorIndex,
    ZeroBaseline,
)
from .inventory import AreaKind, CostTable, ElementClass
from .sharing import SharingConfiguration

__all__ = [
    "ClassCost",
    "ConfigDelta",
    "CostBreakdown",
    "SAVINGS_CSV_HEADER",
    "SavingsReport",
    "apply_sharing",
    "config_delta",
    "cumulative_cost",
    "savings_report",
    "savings_csv_row",
]

DEFAULT_HORIZON_YEARS = 5


@dataclass(frozen=True)
class ClassCost:
    """Cumulative cost of one element class over the horizon."""

    capex: float
    opex_cumulative: float

    @property
    def total(self) -> float:
        return self.capex + self.opex_cumulative


@dataclass(frozen=True)
class CostBreakdown:
    """Per-class cumulative costs for one operator over one horizon."""

    area: AreaKind
    horizon_years: int
    per_class: Mapping[ElementClass, ClassCost]

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_class", dict(self.per_class))

    def capex_total(self) -> float:
        return sum(c.capex for c in self.per_class.values())

    def opex_cumulative_total(self) -> float:
        return sum(c.opex_cumulative for c in self.per_class.values())

    def grand_total(self) -> float:
        return self.capex_total() + self.opex_cumulative_total()


def cumulative_cost(table: CostTable, horizon_years: int = DEFAULT_HORIZON_YEARS) -> CostBreakdown:
    """Accumulate a cost table over a planning horizon.

    CAPEX counts once, OPEX counts ``horizon_years`` times.
    """
    if not isinstance(horizon_years, int) or isinstance(horizon_years, bool) or horizon_years < 1:
        raise InvalidHorizon(f"horizon_years must be a positive integer, got {horizon_years!r}")
    per_class = {
        cls: ClassCost(entry.capex, entry.opex_annual * horizon_years)
        for cls, entry in table.entries.items()
    }
    return CostBreakdown(area=table.area, horizon_years=horizon_years, per_class=per_class)


def apply_sharing(
    baseline: CostBreakdown,
    config: SharingConfiguration,
    operator_index: int = 0,
    carrier_capex_factor: float = 1.0,
) -> CostBreakdown:
    """Cost carried by one operator under a sharing configuration.

    Shared classes cost the operator its split ratio of the full amount;
    unshared classes are carried in full.  ``carrier_capex_factor`` scales
    NodeB CAPEX when spectrum is pooled: combining carriers in shared radio
    units can shave hardware, but the effect is marginal, so it defaults to
    1.0 (off).
    """
    if not isinstance(operator_index, int) or not (0 <= operator_index < config.operator_count):
        raise InvalidOperatorIndex(
            f"operator_index {operator_index!r} out of range for "
            f"{config.operator_count} operators"
        )
    if not (0.0 < carrier_capex_factor <= 1.0):
        raise InvalidAmount(
            f"carrier_capex_factor must be in (0, 1], got {carrier_capex_factor!r}"
        )
    ratio = config.split_ratios[operator_index]
    shared = config.effective_shared()
    pooled_spectrum = ElementClass.SPECTRUM_LICENSE in shared
    per_class = {}
    for cls, cost in baseline.per_class.items():
        factor = ratio if cls in shared else 1.0
        capex = cost.capex * factor
        if cls is ElementClass.NODEB and pooled_spectrum:
            capex *= carrier_capex_factor
        per_class[cls] = ClassCost(capex, cost.opex_cumulative * factor)
    return CostBreakdown(
        area=baseline.area, horizon_years=baseline.horizon_years, per_class=per_class
    )


def _saving_pct(baseline: float, shared: float) -> float:
    # A ledger that costs nothing saves nothing.
    if baseline == 0:
        return 0.0
    return (baseline - shared) / baseline * 100.0


@dataclass(frozen=True)
class SavingsReport:
    """Per-operator savings of a sharing configuration against build-alone."""

    configuration: str
    area: AreaKind
    horizon_years: int
    capex_saving_pct: float
    opex_saving_pct: float
    total_saving_pct: float
    baseline: CostBreakdown
    shared: CostBreakdown

    def per_class_savings(self) -> Mapping[ElementClass, float]:
        """Absolute cumulative amount saved per element class."""
        return {
            cls: self.baseline.per_class[cls].total - self.shared.per_class[cls].total
            for cls in self.baseline.per_class
        }

    def to_json_dict(self) -> dict:
        return {
            "area": self.area.value,
            "configuration": self.configuration,
            "capex_saving_pct": self.capex_saving_pct,
            "opex_saving_pct": self.opex_saving_pct,
            "total_saving_pct": self.total_saving_pct,
            "horizon_years": self.horizon_years,
        }


def savings_report(
    baseline: CostBreakdown,
    shared: CostBreakdown,
    config: SharingConfiguration,
    area: Optional[AreaKind] = None,
) -> SavingsReport:
    """Compare an operator's shared cost against its build-alone baseline."""
    if baseline.horizon_years != shared.horizon_years:
        raise HorizonMismatch(
            f"baseline covers {baseline.horizon_years} years, "
            f"shared covers {shared.horizon_years}"
        )
    if area is None:
        area = baseline.area
    if baseline.area is not shared.area or baseline.area is not area:
        raise AreaMismatch(
            f"baseline area {baseline.area.value}, shared area {shared.area.value}, "
            f"report area {area.value}"
        )
    if baseline.grand_total() == 0:
        raise ZeroBaseline("baseline grand total is zero; savings are undefined")
    return SavingsReport(
        configuration=config.name,
        area=area,
        horizon_years=baseline.horizon_years,
        capex_saving_pct=_saving_pct(baseline.capex_total(), shared.capex_total()),
        opex_saving_pct=_saving_pct(
            baseline.opex_cumulative_total(), shared.opex_cumulative_total()
        ),
        total_saving_pct=_saving_pct(baseline.grand_total(), shared.grand_total()),
        baseline=baseline,
        shared=shared,
    )


@dataclass(frozen=True)
class ConfigDelta:
    """Point difference between two savings reports on the same grid cell."""

    first: str
    second: str
    area: AreaKind
    capex_delta_pp: float
    opex_delta_pp: float
    total_delta_pp: float


def config_delta(first: SavingsReport, second: SavingsReport) -> ConfigDelta:
    """Savings of ``first`` minus savings of ``second``, in points."""
    if first.area is not second.area:
        raise AreaMismatch(f"cannot compare {first.area.value} with {second.area.value}")
    if first.horizon_years != second.horizon_years:
        raise HorizonMismatch(
            f"cannot compare horizons {first.horizon_years} and {second.horizon_years}"
        )
    return ConfigDelta(
        first=first.configuration,
        second=second.configuration,
        area=first.area,
        capex_delta_pp=first.capex_saving_pct - second.capex_saving_pct,
        opex_delta_pp=first.opex_saving_pct - second.opex_saving_pct,
        total_delta_pp=first.total_saving_pct - second.total_saving_pct,
    )


# ---------------------------------------------------------------------------
# Tabular output
# ---------------------------------------------------------------------------

SAVINGS_CSV_HEADER = (
    "area",
    "configuration",
    "capex_saving_pct",
    "opex_saving_pct",
    "total_saving_pct",
    "horizon_years",
)


def savings_csv_row(report: SavingsReport) -> Tuple[str, ...]:
    """One CSV row per report; percentages fixed to 4 decimal places."""
    return (
        report.area.value,
        report.configuration,
        f"{report.capex_saving_pct:.4f}",
        f"{report.opex_saving_pct:.4f}",
        f"{report.total_saving_pct:.4f}",
        str(report.horizon_years),
    )


def savings_to_csv(reports) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SAVINGS_CSV_HEADER)
    for report in reports:
        writer.writerow(savings_csv_row(report))
    return buffer.getvalue()


def savings_to_json(reports, indent: Optional[int] = 2) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=indent)
