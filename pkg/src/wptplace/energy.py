"""Received-energy computation.

Two independent routes to the same quantity:

* ``phi`` / ``big_f`` evaluate the closed-form time integral of inverse
  squared distance from a fixed transmitter to an edge-cruising receiver,
* ``energy_numeric`` evaluates the defining integral by adaptive Simpson
  quadrature and serves as the oracle that cross-checks the closed form.

``report`` scales the geometric kernels to joules with the free-space link
constant and aggregates per-receiver and total figures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import QuadratureError
from .geometry import AreaConfig, Edge, Placement, Trajectory, require_feasible
from .propagation import RfParams, friis_constant, watts_to_dbm

DEFAULT_QUADRATURE_TOL = 1e-9
DEFAULT_QUADRATURE_BUDGET = 1_000_000

# Richardson extrapolation usually beats the per-interval error estimate, but
# not with a hard guarantee; spend a 32x tighter budget so the realized error
# stays beneath the requested tolerance with margin.
_SAFETY = 32.0
# Subdivide this many levels before trusting the Simpson-pair estimate: on
# nearly flat stretches the pair difference can cross zero by accident and
# fake convergence at a coarse level.
_MIN_DEPTH = 5


@dataclass(frozen=True)
class EnergyReport:
    """Energy and average-power summary for a set of transmitter placements.

    ``fairness_ratio`` is min(E_k) / max(E_k) over receivers: 1.0 means every
    receiver harvested the same energy, values near 0 mean one receiver was
    starved.
    """

    per_ruav_energy_j: tuple[float, ...]
    total_energy_j: float
    per_ruav_avg_power_w: tuple[float, ...]
    per_ruav_avg_power_dbm: tuple[float, ...]
    total_avg_power_w: float
    total_avg_power_dbm: float
    fairness_ratio: float


def phi(a_m: float, b_m: float, area: AreaConfig) -> float:
    """Closed-form exposure kernel of one edge traversal, in s/m².

    Value of the integral over t in [0, T] of 1 / ((V t - a)^2 + b^2):

        (arctan(a / b) + arctan((l - a) / b)) / (V b)

    ``b_m`` is the transverse offset between the transmitter and the flight
    line; the integrand is singular at b = 0, so b must be positive.
    """
    if not b_m > 0:
        raise ValueError(f"b_m must be > 0, got {b_m} (integrand singular at b = 0)")
    l = area.side_length_m
    v = area.speed_mps
    return (math.atan(a_m / b_m) + math.atan((l - a_m) / b_m)) / (v * b_m)


def big_f(a_m: float, b_m: float, area: AreaConfig) -> float:
    """Exposure kernel of one transmitter summed over both edge receivers.

    Equals phi(a, b) + phi(a, l - b); proportional to the total energy both
    receivers harvest from a transmitter at (a, b) during one traversal.
    Symmetric under a -> l - a and b -> l - b. The placement must be
    feasible (inside the safe zone, boundaries included).
    """
    require_feasible(Placement(a_m, b_m), area)
    l = area.side_length_m
    return phi(a_m, b_m, area) + phi(a_m, l - b_m, area)


def transverse_offset(p: Placement, traj: Trajectory, area: AreaConfig) -> float:
    """Perpendicular distance from the placement to the receiver's flight line."""
    if traj.edge is Edge.LOWER:
        return p.b_m
    return area.side_length_m - p.b_m


def energy_numeric(
    traj: Trajectory,
    p: Placement,
    area: AreaConfig,
    tol: float = DEFAULT_QUADRATURE_TOL,
    max_evals: int = DEFAULT_QUADRATURE_BUDGET,
) -> float:
    """Exposure kernel by adaptive quadrature of the defining integral.

    Integrates 1 / ((x(t) - a)^2 + (y(t) - b)^2) over one traversal with an
    estimated relative error of at most ``tol``. Independent of the closed
    form in ``phi``; the two must agree to ``tol`` for edge trajectories.
    ``tol`` may be at most 1e-3.

    Raises QuadratureError (carrying the best estimate and its error bound)
    if the evaluation budget runs out before the tolerance is met.
    """
    require_feasible(p, area)
    if not 0 < tol <= 1e-3:
        raise ValueError(f"tol must be in (0, 1e-3], got {tol}")
    offset = transverse_offset(p, traj, area)
    offset_sq = offset * offset
    a = p.a_m
    v = area.speed_mps

    def integrand(t: float) -> float:
        dx = v * t - a
        return 1.0 / (dx * dx + offset_sq)

    return _adaptive_simpson(integrand, 0.0, area.traversal_time(), tol, max_evals)


def report(
    placements: Sequence[Placement],
    trajectories: Sequence[Trajectory],
    area: AreaConfig,
    rf: RfParams,
) -> EnergyReport:
    """Per-receiver and total harvested energy for a set of transmitters.

    Energy is additive over transmitters: each receiver's energy is the link
    constant times the sum of its exposure kernels, times the conversion
    efficiency. Average powers divide by the traversal time.
    """
    if not placements:
        raise ValueError("at least one placement is required")
    if not trajectories:
        raise ValueError("at least one trajectory is required")
    for p in placements:
        require_feasible(p, area)

    scale = rf.efficiency * friis_constant(rf)
    period = area.traversal_time()
    per_energy = tuple(
        scale * math.fsum(phi(p.a_m, transverse_offset(p, traj, area), area) for p in placements)
        for traj in trajectories
    )
    total_energy = math.fsum(per_energy)
    per_power = tuple(e / period for e in per_energy)
    total_power = total_energy / period
    return EnergyReport(
        per_ruav_energy_j=per_energy,
        total_energy_j=total_energy,
        per_ruav_avg_power_w=per_power,
        per_ruav_avg_power_dbm=tuple(watts_to_dbm(w) for w in per_power),
        total_avg_power_w=total_power,
        total_avg_power_dbm=watts_to_dbm(total_power),
        fairness_ratio=min(per_energy) / max(per_energy),
    )


def _simpson(width: float, fa: float, fm: float, fb: float) -> float:
    return width / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float,
    max_evals: int,
) -> float:
    """Adaptive Simpson integration to a relative tolerance.

    The absolute error budget is sized from a fixed composite pre-scan,
    then the adaptive pass subdivides until each interval's Simpson-pair
    discrepancy fits its share of the budget (accepted values are Richardson
    extrapolated). If the pre-scan misjudged the magnitude, the pass is
    rerun with the budget rescaled to the previous result.
    """
    if hi <= lo:
        raise ValueError(f"integration bounds must satisfy lo < hi, got [{lo}, {hi}]")
    # 8-panel composite Simpson pre-scan to size the error budget.
    n_panels = 8
    nodes = [lo + (hi - lo) * i / (2 * n_panels) for i in range(2 * n_panels + 1)]
    values = [f(x) for x in nodes]
    width = (hi - lo) / n_panels
    rough = math.fsum(
        _simpson(width, values[2 * i], values[2 * i + 1], values[2 * i + 2])
        for i in range(n_panels)
    )
    scale = abs(rough) if rough != 0.0 else 1.0
    evals_left = max_evals - len(nodes)

    result = rough
    for _ in range(4):
        result, achieved, used = _simpson_pass(f, lo, hi, rel_tol * scale / _SAFETY, evals_left)
        evals_left -= used
        if achieved * _SAFETY <= rel_tol * abs(result) or result == 0.0:
            return result
        # Budget was sized from an overestimate; tighten and retry.
        scale = abs(result)
    return result


def _simpson_pass(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol_abs: float,
    budget: int,
) -> tuple[float, float, int]:
    """One adaptive sweep. Returns (integral, accumulated error bound, evals)."""
    if budget < 3:
        raise QuadratureError(
            "quadrature budget exhausted before the adaptive pass could start",
            estimate=math.nan,
            error_bound=math.inf,
        )
    f_lo, f_mid, f_hi = f(lo), f(0.5 * (lo + hi)), f(hi)
    evals = 3
    whole = _simpson(hi - lo, f_lo, f_mid, f_hi)
    # Stack entries: (a, b, f(a), f(mid), f(b), simpson(a, b), local budget, depth)
    stack = [(lo, hi, f_lo, f_mid, f_hi, whole, tol_abs, 0)]
    pending = whole
    pending_tol = tol_abs
    total = 0.0
    achieved = 0.0
    min_width = (hi - lo) * 1e-14
    while stack:
        a, b, f_a, f_m, f_b, s_whole, tol_i, depth = stack.pop()
        pending -= s_whole
        pending_tol -= tol_i
        if evals + 2 > budget:
            estimate = total + s_whole + pending
            raise QuadratureError(
                f"quadrature budget exhausted after {evals} evaluations; "
                f"best estimate {estimate!r}",
                estimate=estimate,
                error_bound=achieved + tol_i + pending_tol,
            )
        mid = 0.5 * (a + b)
        f_lm = f(0.5 * (a + mid))
        f_rm = f(0.5 * (mid + b))
        evals += 2
        s_left = _simpson(mid - a, f_a, f_lm, f_m)
        s_right = _simpson(b - mid, f_m, f_rm, f_b)
        delta = s_left + s_right - s_whole
        converged = depth >= _MIN_DEPTH and abs(delta) <= 15.0 * tol_i
        if converged or (b - a) <= min_width:
            total += s_left + s_right + delta / 15.0
            achieved += abs(delta) / 15.0
        else:
            stack.append((a, mid, f_a, f_lm, f_m, s_left, 0.5 * tol_i, depth + 1))
            stack.append((mid, b, f_m, f_rm, f_b, s_right, 0.5 * tol_i, depth + 1))
            pending += s_left + s_right
            pending_tol += tol_i
    return total, achieved, evals
