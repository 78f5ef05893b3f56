"""netshare: techno-economic model of mobile network infrastructure sharing.

Quantifies the CAPEX/OPEX an operator saves by sharing network elements
(passive sites, antennas, NodeB/RNC, backhaul, spectrum, core gateways)
with a partner, per area type and sharing configuration, over a multi-year
amortization horizon.  Includes a scenario engine with parameter sweeps,
a rule-based advisor and a calibration search for reference cost tables.
"""

from .advisor import (
    LteComparisonReport,
    LteContext,
    NetworkState,
    Recommendation,
    Technology,
    Verdict,
    checklist,
    compare_lte,
    recommend,
)
from .calibration import (
    CALIBRATION_CONSTRAINTS,
    CalibrationResult,
    DeltaTarget,
    SavingsTarget,
    calibrate_reference,
)
from .costmodel import (
    CostBreakdown,
    SavingsReport,
    apply_sharing,
    config_delta,
    cumulative_cost,
    savings_report,
)
from .errors import NetshareError
from .inventory import (
    AreaKind,
    AreaProfile,
    CostEntry,
    CostTable,
    ElementClass,
    Ledger,
    Market,
    RepartitionConstraint,
    RepartitionConstraintSet,
    build_inventory,
    check_repartition,
    default_constraints,
    default_market_costs,
    default_profile,
)
from .scenario import (
    Scenario,
    ScenarioResult,
    SweepSpec,
    load_scenario,
    load_scenario_file,
    reference_cost_table,
    run_scenario,
    sweep,
)
from .sharing import (
    NO_SHARING,
    PRESET_NAMES,
    RegulatoryPolicy,
    SharingConfiguration,
    SharingLevel,
    preset,
    sharing_level,
    validate_configuration,
)

__version__ = "0.1.0"

__all__ = [
    "AreaKind",
    "AreaProfile",
    "CALIBRATION_CONSTRAINTS",
    "CalibrationResult",
    "CostBreakdown",
    "CostEntry",
    "CostTable",
    "DeltaTarget",
    "ElementClass",
    "Ledger",
    "LteComparisonReport",
    "LteContext",
    "Market",
    "NetshareError",
    "NetworkState",
    "NO_SHARING",
    "PRESET_NAMES",
    "Recommendation",
    "RegulatoryPolicy",
    "RepartitionConstraint",
    "RepartitionConstraintSet",
    "SavingsReport",
    "SavingsTarget",
    "Scenario",
    "ScenarioResult",
    "SharingConfiguration",
    "SharingLevel",
    "SweepSpec",
    "Technology",
    "Verdict",
    "apply_sharing",
    "build_inventory",
    "calibrate_reference",
    "check_repartition",
    "checklist",
    "compare_lte",
    "config_delta",
    "cumulative_cost",
    "default_constraints",
    "default_market_costs",
    "default_profile",
    "load_scenario",
    "load_scenario_file",
    "preset",
    "recommend",
    "reference_cost_table",
    "run_scenario",
    "savings_report",
    "sharing_level",
    "sweep",
    "validate_configuration",
    "__version__",
]
