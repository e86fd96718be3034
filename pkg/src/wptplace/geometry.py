"""Service-area geometry: square zones, receiver trajectories, distances.

The service area is a square of side ``l``. Two receiver UAVs cruise back
and forth along the lower (y = 0) and upper (y = l) edges at constant speed.
A strip of width ``epsilon`` along each edge is a collision-exclusion zone:
transmitters must keep b in [epsilon, l - epsilon]. Both zone boundaries are
inclusive because the best placements sit exactly on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import FeasibilityError

Point = tuple[float, float]


class Edge(Enum):
    """Which horizontal edge of the square a receiver UAV patrols."""

    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class AreaConfig:
    """Square service area plus the receiver cruise speed.

    ``epsilon_m`` is the width of the exclusion strip along each patrolled
    edge and must satisfy 0 < epsilon_m < side_length_m / 2, otherwise no
    feasible transmitter region remains.
    """

    side_length_m: float
    epsilon_m: float
    speed_mps: float

    def __post_init__(self) -> None:
        if not self.side_length_m > 0:
            raise ValueError(f"side_length_m must be > 0, got {self.side_length_m}")
        if not self.speed_mps > 0:
            raise ValueError(f"speed_mps must be > 0, got {self.speed_mps}")
        if not 0 < self.epsilon_m < self.side_length_m / 2:
            raise ValueError(
                "epsilon_m must lie in (0, side_length_m / 2) = "
                f"(0, {self.side_length_m / 2}), got {self.epsilon_m}"
            )

    def traversal_time(self) -> float:
        """Seconds for a receiver to cross one side of the square."""
        return self.side_length_m / self.speed_mps


@dataclass(frozen=True)
class Trajectory:
    """Linear edge path of one receiver: (x, y)(t) = (V t, 0) or (V t, l)."""

    edge: Edge

    def edge_y(self, area: AreaConfig) -> float:
        """Constant y coordinate of this path."""
        return 0.0 if self.edge is Edge.LOWER else area.side_length_m


@dataclass(frozen=True)
class Placement:
    """Fixed (a, b) coordinates of one transmitter UAV."""

    a_m: float
    b_m: float


def ruav_position(traj: Trajectory, area: AreaConfig, t: float) -> Point:
    """Receiver position at time t in [0, T], T = side_length / speed."""
    period = area.traversal_time()
    if not 0 <= t <= period:
        raise ValueError(f"t={t} outside the traversal interval [0, {period}]")
    return (area.speed_mps * t, traj.edge_y(area))


def in_safe_zone(p: Placement, area: AreaConfig) -> bool:
    """True iff 0 <= a <= l and epsilon <= b <= l - epsilon (bounds inclusive)."""
    l = area.side_length_m
    eps = area.epsilon_m
    return 0 <= p.a_m <= l and eps <= p.b_m <= l - eps


def require_feasible(p: Placement, area: AreaConfig) -> None:
    """Raise FeasibilityError if the placement lies outside the safe zone."""
    l = area.side_length_m
    eps = area.epsilon_m
    if not 0 <= p.a_m <= l:
        raise FeasibilityError(
            f"placement ({p.a_m}, {p.b_m}) violates 0 ≤ a ≤ l "
            f"(0 ≤ a ≤ {l})"
        )
    if not eps <= p.b_m <= l - eps:
        raise FeasibilityError(
            f"placement ({p.a_m}, {p.b_m}) violates ε ≤ b ≤ l − ε "
            f"({eps} ≤ b ≤ {l - eps})"
        )


def distance(p: Point, q: Point) -> float:
    """Euclidean distance between two planar points."""
    return math.hypot(p[0] - q[0], p[1] - q[1])
