"""Offline calibration search for the bundled reference cost tables.

No absolute costs are available for the three-area use case, only fraction
envelopes (which classes take which share of each ledger) and headline
savings figures per configuration.  This module reconstructs cost tables
from those two ingredients: a constrained least-squares search over per-area
fraction vectors that must satisfy every repartition constraint and should
come as close as possible to the savings targets.

The search runs offline, seeded and deterministic.  Its output is committed
as fixtures (``reference_costs_*.json``) together with a sidecar record
(``reference_calibration.json``) holding the method, seed, constraint set,
achieved residuals and derived unit costs.  A standing regression test
re-verifies the committed tables against that record; the optimizer itself
never runs inside the engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog, minimize

from .costmodel import apply_sharing, cumulative_cost, savings_report
from .errors import InfeasibleCalibration, MalformedScenario
from .inventory import (
    AreaKind,
    CostEntry,
    CostTable,
    ElementClass,
    Ledger,
    RepartitionConstraint,
    RepartitionConstraintSet,
    check_repartition,
    default_profile,
    element_quantity,
)
from .sharing import SharingConfiguration, preset

__all__ = [
    "CALIBRATION_CONSTRAINTS",
    "CalibrationResult",
    "DeltaTarget",
    "SavingsTarget",
    "TargetOutcome",
    "calibrate_reference",
    "load_targets_document",
]

_CLASSES = tuple(ElementClass)
_INDEX = {cls: i for i, cls in enumerate(_CLASSES)}
_N = len(_CLASSES)

GRID_PRESETS = (
    "MOCN",
    "MOCN + Backhaul",
    "MOCN - Spectrum",
    "GWCN",
    "GWCN + Backhaul",
    "GWCN - Spectrum",
)


@dataclass(frozen=True)
class SavingsTarget:
    """One headline savings figure: metric of one configuration in one area."""

    area: AreaKind
    metric: str  # "capex", "opex" or "total"
    configuration: str
    value: float  # percent
    weight: float = 1.0
    bound: float = 2.0  # max acceptable |residual|, percentage points
    note: str = ""

    def __post_init__(self) -> None:
        if self.metric not in ("capex", "opex", "total"):
            raise MalformedScenario(f"unknown target metric {self.metric!r}")

    def describe(self) -> str:
        return f"{self.area.value}: {self.metric}({self.configuration}) = {self.value}"


@dataclass(frozen=True)
class DeltaTarget:
    """Difference of one metric between two configurations in one area."""

    area: AreaKind
    metric: str
    first: str
    second: str
    value: float  # percentage points
    weight: float = 1.0
    bound: float = 2.0
    note: str = ""

    def __post_init__(self) -> None:
        if self.metric not in ("capex", "opex", "total"):
            raise MalformedScenario(f"unknown target metric {self.metric!r}")

    def describe(self) -> str:
        return (
            f"{self.area.value}: {self.metric}({self.first}) - "
            f"{self.metric}({self.second}) = {self.value}"
        )


Target = Union[SavingsTarget, DeltaTarget]


@dataclass(frozen=True)
class TargetOutcome:
    target: Target
    achieved: float
    residual: float  # achieved - target.value

    @property
    def within_bound(self) -> bool:
        return abs(self.residual) <= self.target.bound


@dataclass(frozen=True)
class CalibrationResult:
    tables: Mapping[AreaKind, CostTable]
    outcomes: Tuple[TargetOutcome, ...]
    constraint_sets: Mapping[AreaKind, RepartitionConstraintSet]
    method: str
    seed: int
    horizon_years: int
    configurations: Tuple[str, ...]

    def residual_report(self) -> Tuple[Tuple[str, float, float], ...]:
        return tuple((o.target.describe(), o.achieved, o.residual) for o in self.outcomes)


# ---------------------------------------------------------------------------
# Calibration constraint set
# ---------------------------------------------------------------------------

_E = ElementClass


def _c(label, ledger, classes, lower, upper, area=None):
    return RepartitionConstraint(
        label=label, ledger=ledger, classes=frozenset(classes), lower=lower, upper=upper, area=area
    )


# Feasible variant of the use-case envelope from default_constraints().
# Two lower bounds are widened, because the published point estimates are
# jointly unsatisfiable once the savings targets enter:
#   - rnc_share for urban/suburban drops 0.32 -> 0.27 (nodeb + rnc floors
#     alone would otherwise exceed the CAPEX shared base implied by the
#     minimum-savings target);
#   - backhaul_share for rural drops 0.32 -> 0.24 (the rural CAPEX floor
#     plus backhaul/core/oam floors would exceed the whole ledger).
# The regression suite records exactly which default-envelope members the
# committed tables miss, so the deviation stays visible.
CALIBRATION_CONSTRAINTS = RepartitionConstraintSet(
    name="use_case_calibration",
    constraints=(
        _c("core_share", Ledger.CAPEX, {_E.CORE_SGSN, _E.CORE_GGSN}, 0.08, 0.17),
        _c("oam_share", Ledger.CAPEX, {_E.OAM}, 0.08, 0.17),
        _c("nodeb_share", Ledger.CAPEX, {_E.NODEB}, 0.23, 0.29),
        _c("backhaul_share_urban", Ledger.CAPEX, {_E.BACKHAUL}, 0.32, 0.41, AreaKind.URBAN),
        _c(
            "backhaul_share_suburban",
            Ledger.CAPEX,
            {_E.BACKHAUL},
            0.32,
            0.41,
            AreaKind.SUBURBAN,
        ),
        _c("backhaul_share_rural", Ledger.CAPEX, {_E.BACKHAUL}, 0.24, 0.41, AreaKind.RURAL),
        _c("rnc_share_urban", Ledger.CAPEX, {_E.RNC}, 0.27, 0.41, AreaKind.URBAN),
        _c("rnc_share_suburban", Ledger.CAPEX, {_E.RNC}, 0.27, 0.41, AreaKind.SUBURBAN),
        _c("rnc_share_rural", Ledger.CAPEX, {_E.RNC}, 0.09, 0.13, AreaKind.RURAL),
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
    ),
)


# ---------------------------------------------------------------------------
# Search internals
# ---------------------------------------------------------------------------


def _normalise_targets(targets: Sequence) -> Tuple[Target, ...]:
    out = []
    for t in targets:
        if isinstance(t, (SavingsTarget, DeltaTarget)):
            out.append(t)
        elif isinstance(t, (tuple, list)) and len(t) == 3:
            area, configuration, value = t
            out.append(
                SavingsTarget(
                    area=area if isinstance(area, AreaKind) else AreaKind(area),
                    metric="total",
                    configuration=str(configuration),
                    value=float(value),
                )
            )
        else:
            raise MalformedScenario(f"cannot interpret calibration target {t!r}")
    return tuple(out)


def _ledger_feasible(constraints: Sequence[RepartitionConstraint]) -> bool:
    """LP feasibility of fraction vectors under the interval constraints."""
    if not constraints:
        return True
    a_ub, b_ub = [], []
    for con in constraints:
        row = np.zeros(_N)
        for cls in con.classes:
            row[_INDEX[cls]] = 1.0
        a_ub.append(row)  # sum <= upper
        b_ub.append(con.upper)
        a_ub.append(-row)  # sum >= lower
        b_ub.append(-con.lower)
    a_eq = np.ones((1, _N))
    b_eq = np.array([1.0])
    res = linprog(
        c=np.zeros(_N),
        A_ub=np.array(a_ub),
        b_ub=np.array(b_ub),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0.0, 1.0)] * _N,
        method="highs",
    )
    return bool(res.success)


def _feasible_point(constraints: Sequence[RepartitionConstraint], rng: np.random.Generator):
    """A random interior-ish feasible fraction vector (LP with random cost)."""
    a_ub, b_ub = [], []
    for con in constraints:
        row = np.zeros(_N)
        for cls in con.classes:
            row[_INDEX[cls]] = 1.0
        a_ub.append(row)
        b_ub.append(con.upper)
        a_ub.append(-row)
        b_ub.append(-con.lower)
    res = linprog(
        c=rng.standard_normal(_N),
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.ones((1, _N)),
        b_eq=np.array([1.0]),
        bounds=[(0.0, 1.0)] * _N,
        method="highs",
    )
    if not res.success:
        return None
    return np.clip(res.x, 0.0, 1.0)


class _AreaProblem:
    """Least-squares problem over one area's 26 cost amounts.

    Variables: x[:13] CAPEX amounts (normalised to sum 1) and x[13:] annual
    OPEX amounts (free scale, which sets the CAPEX/OPEX weighting of the
    total).  All savings metrics are smooth rational functions of x.
    """

    def __init__(
        self,
        area: AreaKind,
        targets: Sequence[Target],
        constraints: Sequence[RepartitionConstraint],
        configurations: Mapping[str, SharingConfiguration],
        horizon_years: int,
    ) -> None:
        self.area = area
        self.targets = tuple(targets)
        self.constraints = tuple(constraints)
        self.horizon = horizon_years
        self.configs = dict(configurations)
        # Pre-resolve shared-class index masks and split factors per config.
        self.masks = {}
        self.saving_factor = {}
        for name, config in self.configs.items():
            shared = config.effective_shared()
            mask = np.zeros(_N)
            for cls in shared:
                mask[_INDEX[cls]] = 1.0
            self.masks[name] = mask
            self.saving_factor[name] = 1.0 - config.split_ratios[0]

    # -- metric evaluation ------------------------------------------------

    def _metric(self, x: np.ndarray, metric: str, configuration: str) -> float:
        cap = x[:_N]
        op = x[_N:]
        cap_total = cap.sum()
        op_total = op.sum()
        mask = self.masks[configuration]
        factor = self.saving_factor[configuration]
        scap = 100.0 * factor * float(mask @ cap) / cap_total
        sop = 100.0 * factor * float(mask @ op) / op_total if op_total > 0 else 0.0
        if metric == "capex":
            return scap
        if metric == "opex":
            return sop
        opex_cum = self.horizon * op_total
        grand = cap_total + opex_cum
        return (cap_total * scap + opex_cum * sop) / grand

    def evaluate(self, x: np.ndarray, target: Target) -> float:
        if isinstance(target, SavingsTarget):
            return self._metric(x, target.metric, target.configuration)
        return self._metric(x, target.metric, target.first) - self._metric(
            x, target.metric, target.second
        )

    def objective(self, x: np.ndarray) -> float:
        total = 0.0
        for target in self.targets:
            err = self.evaluate(x, target) - target.value
            total += target.weight * err * err
        return total

    # -- constraints for SLSQP ---------------------------------------------

    def slsqp_constraints(self):
        cons = [{"type": "eq", "fun": lambda x: x[:_N].sum() - 1.0}]
        # keep the OPEX ledger non-degenerate
        cons.append({"type": "ineq", "fun": lambda x: x[_N:].sum() - 1e-3})
        for con in self.constraints:
            mask = np.zeros(_N)
            for cls in con.classes:
                mask[_INDEX[cls]] = 1.0
            if con.ledger.base() is Ledger.CAPEX:

                def lo(x, m=mask, c=con):
                    return float(m @ x[:_N]) - c.lower * x[:_N].sum()

                def hi(x, m=mask, c=con):
                    return c.upper * x[:_N].sum() - float(m @ x[:_N])

            else:

                def lo(x, m=mask, c=con):
                    return float(m @ x[_N:]) - c.lower * x[_N:].sum()

                def hi(x, m=mask, c=con):
                    return c.upper * x[_N:].sum() - float(m @ x[_N:])

            cons.append({"type": "ineq", "fun": lo})
            cons.append({"type": "ineq", "fun": hi})
        return cons

    def initial_guesses(self, rng: np.random.Generator, count: int):
        cap_cons = [c for c in self.constraints if c.ledger.base() is Ledger.CAPEX]
        op_cons = [c for c in self.constraints if c.ledger.base() is Ledger.OPEX]
        guesses = []
        for _ in range(count):
            cap = _feasible_point(cap_cons, rng)
            op = _feasible_point(op_cons, rng)
            if cap is None or op is None:
                continue
            # soften LP-vertex starts toward the uniform simplex point
            blend = rng.uniform(0.05, 0.35)
            cap = (1 - blend) * cap + blend / _N
            op = (1 - blend) * op + blend / _N
            # annual OPEX scale: start near an even CAPEX/OPEX split of the
            # cumulative total, then jitter
            omega = rng.uniform(0.5, 1.5) / self.horizon
            guesses.append(np.concatenate([cap, op * omega]))
        return guesses

    def solve(self, rng: np.random.Generator, restarts: int, maxiter: int):
        best = None
        cons = self.slsqp_constraints()
        bounds = [(0.0, 1.0)] * _N + [(0.0, 5.0)] * _N
        for guess in self.initial_guesses(rng, restarts):
            res = minimize(
                self.objective,
                guess,
                method="SLSQP",
                bounds=bounds,
                constraints=cons,
                options={"maxiter": maxiter, "ftol": 1e-14},
            )
            if not np.all(np.isfinite(res.x)):
                continue
            violation = self._max_violation(res.x)
            score = (violation > 1e-7, res.fun)
            if best is None or score < best[0]:
                best = (score, res.x.copy())
        if best is None:
            return None
        return best[1]

    def _max_violation(self, x: np.ndarray) -> float:
        worst = abs(x[:_N].sum() - 1.0)
        for con in self.slsqp_constraints():
            if con["type"] == "ineq":
                worst = max(worst, -min(0.0, con["fun"](x)))
        return worst


def _pipeline_metric(
    table: CostTable, config: SharingConfiguration, metric: str, horizon: int
) -> float:
    """Metric recomputed through the real cost model (not the search form)."""
    baseline = cumulative_cost(table, horizon)
    shared = apply_sharing(baseline, config, 0)
    report = savings_report(baseline, shared, config)
    return {
        "capex": report.capex_saving_pct,
        "opex": report.opex_saving_pct,
        "total": report.total_saving_pct,
    }[metric]


def calibrate_reference(
    constraints: RepartitionConstraintSet,
    targets: Sequence,
    *,
    configurations: Optional[Sequence[SharingConfiguration]] = None,
    horizon_years: int = 5,
    seed: int = 0,
    restarts: int = 8,
    maxiter: int = 400,
    capex_scale: float = 100_000.0,
    currency: str = "units",
) -> CalibrationResult:
    """Fit one cost table per targeted area to constraints and targets.

    Raises :class:`InfeasibleCalibration` when the constraint set admits no
    fraction vector for some area, when the best candidate still violates a
    constraint, or when a target ends up farther from its value than its
    declared residual bound.
    """
    targets = _normalise_targets(targets)
    if not targets:
        raise MalformedScenario("calibration needs at least one target")
    if configurations is None:
        configurations = tuple(preset(name) for name in GRID_PRESETS)
    config_map = {c.name: c for c in configurations}
    for target in targets:
        names = (
            (target.configuration,)
            if isinstance(target, SavingsTarget)
            else (target.first, target.second)
        )
        for name in names:
            if name not in config_map:
                raise MalformedScenario(
                    f"target references unknown configuration {name!r}"
                )

    areas = []
    for target in targets:
        if target.area not in areas:
            areas.append(target.area)

    rng = np.random.default_rng(seed)
    tables = {}
    constraint_sets = {}
    outcomes = []
    for area in areas:
        area_constraints = constraints.for_area(area)
        for ledger in (Ledger.CAPEX, Ledger.OPEX):
            subset = [c for c in area_constraints if c.ledger.base() is ledger]
            if not _ledger_feasible(subset):
                raise InfeasibleCalibration(
                    f"{area.value} {ledger.value} constraints admit no fraction vector",
                    violations=[c.label for c in subset],
                )
        problem = _AreaProblem(
            area=area,
            targets=[t for t in targets if t.area is area],
            constraints=area_constraints,
            configurations=config_map,
            horizon_years=horizon_years,
        )
        solution = problem.solve(rng, restarts=restarts, maxiter=maxiter)
        if solution is None:
            raise InfeasibleCalibration(
                f"search found no candidate for {area.value}",
                violations=[c.label for c in area_constraints],
            )
        cap = np.clip(solution[:_N], 0.0, None)
        op = np.clip(solution[_N:], 0.0, None)
        # renormalise jointly so the CAPEX ledger sums to 1 without moving
        # the CAPEX/OPEX balance
        cap_sum = cap.sum()
        cap = cap / cap_sum
        op = op / cap_sum
        entries = {}
        for cls in _CLASSES:
            capex = round(float(cap[_INDEX[cls]]) * capex_scale, 4)
            opex = round(float(op[_INDEX[cls]]) * capex_scale, 4)
            if capex or opex:
                entries[cls] = CostEntry(capex, opex)
        table = CostTable(area=area, entries=entries, currency=currency)
        report = check_repartition(
            table, RepartitionConstraintSet(constraints.name, area_constraints)
        )
        if not report.overall:
            raise InfeasibleCalibration(
                f"calibrated {area.value} table violates constraints",
                violations=[c.constraint.label for c in report.failures()],
            )
        tables[area] = table
        constraint_sets[area] = RepartitionConstraintSet(constraints.name, area_constraints)
        for target in problem.targets:
            if isinstance(target, SavingsTarget):
                achieved = _pipeline_metric(
                    table, config_map[target.configuration], target.metric, horizon_years
                )
            else:
                achieved = _pipeline_metric(
                    table, config_map[target.first], target.metric, horizon_years
                ) - _pipeline_metric(
                    table, config_map[target.second], target.metric, horizon_years
                )
            outcomes.append(
                TargetOutcome(target=target, achieved=achieved, residual=achieved - target.value)
            )

    out_of_bound = [o for o in outcomes if not o.within_bound]
    if out_of_bound:
        raise InfeasibleCalibration(
            "calibration could not reach the residual bounds",
            violations=[
                f"{o.target.describe()} (achieved {o.achieved:.4f})" for o in out_of_bound
            ],
        )
    return CalibrationResult(
        tables=tables,
        outcomes=tuple(outcomes),
        constraint_sets=constraint_sets,
        method=f"multistart SLSQP over per-area fraction vectors ({restarts} LP-seeded starts)",
        seed=seed,
        horizon_years=horizon_years,
        configurations=tuple(config_map),
    )


# ---------------------------------------------------------------------------
# Targets document
# ---------------------------------------------------------------------------

_TARGET_KEYS = {"kind", "area", "metric", "configuration", "first", "second", "value", "weight", "bound", "note"}


def _parse_target(doc: Mapping) -> Target:
    unknown = set(doc) - _TARGET_KEYS
    if unknown:
        raise MalformedScenario(f"unknown target keys: {sorted(unknown)!r}")
    kind = doc.get("kind", "saving")
    try:
        area = AreaKind(doc["area"])
    except (KeyError, ValueError) as exc:
        raise MalformedScenario(f"target needs a valid 'area': {exc}") from exc
    common = dict(
        area=area,
        metric=str(doc.get("metric", "total")),
        value=float(doc["value"]),
        weight=float(doc.get("weight", 1.0)),
        bound=float(doc.get("bound", 2.0)),
        note=str(doc.get("note", "")),
    )
    if kind == "saving":
        if "configuration" not in doc:
            raise MalformedScenario("saving target needs 'configuration'")
        return SavingsTarget(configuration=str(doc["configuration"]), **common)
    if kind == "delta":
        if "first" not in doc or "second" not in doc:
            raise MalformedScenario("delta target needs 'first' and 'second'")
        return DeltaTarget(first=str(doc["first"]), second=str(doc["second"]), **common)
    raise MalformedScenario(f"unknown target kind {kind!r}")


def load_targets_document(text: str):
    """Parse a calibration targets document.

    Returns (targets, constraints, horizon_years, seed).  Schema:
    ``{"horizon_years": n, "seed": n, "constraints": {...}?, "targets": [...]}``;
    constraints default to :data:`CALIBRATION_CONSTRAINTS`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedScenario(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    allowed = {"horizon_years", "seed", "constraints", "targets"}
    unknown = set(doc) - allowed
    if unknown:
        raise MalformedScenario(f"unknown targets-document keys: {sorted(unknown)!r}")
    if "targets" not in doc or not doc["targets"]:
        raise MalformedScenario("targets document lists no targets")
    targets = tuple(_parse_target(t) for t in doc["targets"])
    constraints = (
        RepartitionConstraintSet.from_json_dict(doc["constraints"])
        if doc.get("constraints")
        else CALIBRATION_CONSTRAINTS
    )
    return (
        targets,
        constraints,
        int(doc.get("horizon_years", 5)),
        int(doc.get("seed", 0)),
    )
