"""Placement engine for stationary airborne RF chargers powering cruising UAVs."""

from .energy import (
    EnergyReport,
    big_f,
    energy_numeric,
    phi,
    report,
    transverse_offset,
)
from .errors import ConfigError, FeasibilityError, QuadratureError
from .geometry import (
    AreaConfig,
    Edge,
    Placement,
    Trajectory,
    distance,
    in_safe_zone,
    require_feasible,
    ruav_position,
)
from .placement import (
    AllocationPolicy,
    SweepGrid,
    SweepRow,
    allocate,
    analytic_optimum,
    compare_placements,
    grid_search,
)
from .propagation import (
    LIGHT_SPEED_MPS,
    RfParams,
    dbm_to_watts,
    friis_constant,
    friis_received_power,
    watts_to_dbm,
)

__all__ = [
    "AllocationPolicy",
    "AreaConfig",
    "ConfigError",
    "Edge",
    "EnergyReport",
    "FeasibilityError",
    "LIGHT_SPEED_MPS",
    "Placement",
    "QuadratureError",
    "RfParams",
    "SweepGrid",
    "SweepRow",
    "Trajectory",
    "allocate",
    "analytic_optimum",
    "big_f",
    "compare_placements",
    "dbm_to_watts",
    "distance",
    "energy_numeric",
    "friis_constant",
    "friis_received_power",
    "grid_search",
    "in_safe_zone",
    "phi",
    "report",
    "require_feasible",
    "ruav_position",
    "transverse_offset",
    "watts_to_dbm",
]

__version__ = "0.1.0"
