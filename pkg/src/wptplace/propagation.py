"""Free-space received-power model and power-unit conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

LIGHT_SPEED_MPS = 299_792_458.0

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class RfParams:
    """Link parameters of one transmitter/receiver pair.

    Gains are given in dBi, as data sheets state them, and converted to
    linear once at construction so the hot paths never touch a log.
    ``efficiency`` is the RF-to-stored-energy conversion factor in (0, 1];
    the default 1.0 models an ideal harvester.
    """

    tx_power_w: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    frequency_hz: float
    light_speed_mps: float = LIGHT_SPEED_MPS
    efficiency: float = 1.0
    tx_gain_lin: float = field(init=False, compare=False, repr=False)
    rx_gain_lin: float = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.tx_power_w > 0:
            raise ValueError(f"tx_power_w must be > 0, got {self.tx_power_w}")
        if not self.frequency_hz > 0:
            raise ValueError(f"frequency_hz must be > 0, got {self.frequency_hz}")
        if not self.light_speed_mps > 0:
            raise ValueError(f"light_speed_mps must be > 0, got {self.light_speed_mps}")
        if not 0 < self.efficiency <= 1:
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")
        object.__setattr__(self, "tx_gain_lin", 10.0 ** (self.tx_gain_dbi / 10.0))
        object.__setattr__(self, "rx_gain_lin", 10.0 ** (self.rx_gain_dbi / 10.0))

    def wavelength(self) -> float:
        """Carrier wavelength c / f in meters."""
        return self.light_speed_mps / self.frequency_hz


def friis_constant(rf: RfParams) -> float:
    """Numerator constant P G_t G_r lambda^2 / (4 pi)^2, in W·m².

    Dividing by squared range gives the ideal received power; the
    conversion efficiency is applied separately by the callers.
    """
    lam = rf.wavelength()
    return rf.tx_power_w * rf.tx_gain_lin * rf.rx_gain_lin * lam * lam / (_FOUR_PI * _FOUR_PI)


def friis_received_power(rf: RfParams, range_m: float) -> float:
    """Harvested power in watts at the given range, free-space line of sight.

    Far-field model: scales as 1/range^2 and diverges at zero range, so
    non-positive ranges are rejected.
    """
    if not range_m > 0:
        raise ValueError(f"range_m must be > 0, got {range_m}")
    return rf.efficiency * friis_constant(rf) / (range_m * range_m)


def watts_to_dbm(power_w: float) -> float:
    """Power in dB relative to one milliwatt."""
    if not power_w > 0:
        raise ValueError(f"power_w must be > 0, got {power_w}")
    return 10.0 * math.log10(power_w / 1e-3)


def dbm_to_watts(power_dbm: float) -> float:
    """Inverse of watts_to_dbm."""
    return 1e-3 * 10.0 ** (power_dbm / 10.0)
