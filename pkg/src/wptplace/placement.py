"""Transmitter placement: analytic optimum, exhaustive sweeps, allocation.

The total-energy objective is maximized at the two safe-zone boundary
midpoints (l/2, epsilon) and (l/2, l - epsilon): it is concave in a with its
peak at a = l/2 and convex in b, so the b-extremes win. ``grid_search``
verifies this exhaustively and produces raster data; ``allocate`` spreads n
transmitters over the two optima, trading total energy against fairness when
n is odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .energy import report
from .errors import ConfigError
from .geometry import AreaConfig, Edge, Placement, Trajectory
from .propagation import RfParams, friis_constant

ARGMAX_REL_TIE = 1e-12


class AllocationPolicy(Enum):
    """How to spend transmitters: maximize the total, or equalize receivers."""

    MAX_TOTAL = "max-total"
    FAIR = "fair"


class SweepRow(NamedTuple):
    a_m: float
    b_m: float
    kernel: float
    avg_power_w: float | None
    avg_power_dbm: float | None


@dataclass(frozen=True)
class SweepGrid:
    """Exhaustive evaluation of the exposure kernel over the safe zone.

    ``rows`` cover every feasible lattice point, ordered by a then b;
    ``argmax_cells`` lists every cell within a 1e-12 relative tie of the
    maximum, sorted the same way.
    """

    resolution_m: float
    rows: tuple[SweepRow, ...]
    argmax_cells: tuple[tuple[float, float], ...]


def analytic_optimum(area: AreaConfig) -> tuple[Placement, Placement]:
    """The two placements that maximize total energy over both receivers.

    Midpoints of the two safe-zone boundary lines: (l/2, epsilon) and
    (l/2, l - epsilon). Invariant under relabeling the receiver edges.
    """
    l = area.side_length_m
    eps = area.epsilon_m
    return (Placement(l / 2, eps), Placement(l / 2, l - eps))


def _axis_values(start: float, stop: float, step: float, forced: Sequence[float]) -> np.ndarray:
    """Lattice from start by step, with the forced coordinates sampled exactly.

    Base points that land within a millionth of a step of a forced value are
    replaced by it, so boundary cells are never duplicated or missed.
    """
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    base = start + step * np.arange(count)
    tol = step * 1e-6
    keep = np.ones(base.shape, dtype=bool)
    for value in forced:
        keep &= np.abs(base - value) > tol
    merged = np.concatenate([base[keep], np.asarray(forced, dtype=float)])
    merged = merged[(merged >= start - tol) & (merged <= stop + tol)]
    return np.unique(merged)


def grid_search(
    area: AreaConfig,
    resolution_m: float,
    trajectories: Sequence[Trajectory],
    rf: RfParams | None = None,
) -> SweepGrid:
    """Evaluate the exposure kernel at every feasible lattice point.

    The lattice always samples the boundary lines b = epsilon and
    b = l - epsilon and the column a = l/2 exactly, so boundary optima are
    visible at any resolution. With ``rf`` given, rows also carry the
    physical average power in W and dBm; without it those fields are None.
    """
    l = area.side_length_m
    eps = area.epsilon_m
    if not 0 < resolution_m <= l / 4:
        raise ConfigError(
            f"resolution_m must be in (0, l/4] = (0, {l / 4}] to cover the "
            f"safe zone, got {resolution_m}"
        )
    if not trajectories:
        raise ValueError("at least one trajectory is required")

    a_vals = _axis_values(0.0, l, resolution_m, forced=(l / 2, l))
    b_vals = _axis_values(eps, l - eps, resolution_m, forced=(l - eps,))

    a_grid = a_vals[:, None]
    kernel = np.zeros((a_vals.size, b_vals.size))
    v = area.speed_mps
    for traj in trajectories:
        offsets = b_vals if traj.edge is Edge.LOWER else l - b_vals
        kernel += (np.arctan(a_grid / offsets) + np.arctan((l - a_grid) / offsets)) / (v * offsets)

    if rf is not None:
        power_w = rf.efficiency * friis_constant(rf) * kernel / area.traversal_time()
        power_dbm = 10.0 * np.log10(power_w / 1e-3)
    else:
        power_w = power_dbm = None

    rows = []
    for i, a in enumerate(a_vals):
        for j, b in enumerate(b_vals):
            rows.append(
                SweepRow(
                    float(a),
                    float(b),
                    float(kernel[i, j]),
                    float(power_w[i, j]) if power_w is not None else None,
                    float(power_dbm[i, j]) if power_dbm is not None else None,
                )
            )

    peak = float(kernel.max())
    tie = np.argwhere(kernel >= peak * (1.0 - ARGMAX_REL_TIE))
    argmax_cells = tuple((float(a_vals[i]), float(b_vals[j])) for i, j in tie)
    return SweepGrid(resolution_m=resolution_m, rows=tuple(rows), argmax_cells=argmax_cells)


def allocate(n_tuavs: int, policy: AllocationPolicy, area: AreaConfig) -> list[Placement]:
    """Place n transmitters for the two-edge-receiver scenario.

    MAX_TOTAL stacks everything on the two boundary optima, ceil(n/2) on the
    lower one by convention. FAIR does the same for even n (which is also
    total-optimal); for odd n the leftover transmitter goes to the area
    centre (l/2, l/2), equidistant from both receivers, sacrificing some
    total energy to keep the two receivers equal.
    """
    if n_tuavs < 1:
        raise ValueError(f"n_tuavs must be >= 1, got {n_tuavs}")
    low, high = analytic_optimum(area)
    if policy is AllocationPolicy.MAX_TOTAL:
        return [low] * ((n_tuavs + 1) // 2) + [high] * (n_tuavs // 2)
    placements = [low] * (n_tuavs // 2) + [high] * (n_tuavs // 2)
    if n_tuavs % 2:
        l = area.side_length_m
        placements.append(Placement(l / 2, l / 2))
    return placements


def compare_placements(
    candidate: Sequence[Placement],
    baseline: Sequence[Placement],
    trajectories: Sequence[Trajectory],
    area: AreaConfig,
    rf: RfParams,
) -> float:
    """Total-average-power advantage of candidate over baseline, in dB."""
    candidate_dbm = report(candidate, trajectories, area, rf).total_avg_power_dbm
    baseline_dbm = report(baseline, trajectories, area, rf).total_avg_power_dbm
    return candidate_dbm - baseline_dbm
