"""Single-FeFET behavioral model.

A FeFET is treated as a transistor whose threshold voltage is set by write
pulses: a positive gate pulse leaves the device in the low-V_TH (LVT) state,
a negative pulse in the high-V_TH (HVT) state. Reads map a gate voltage to a
drain current through either a hard threshold switch or a clamped log-linear
(subthreshold-slope) ramp. Device-to-device variability is an optional
Gaussian offset on V_TH, resampled at every program event.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np

# Write-pulse conditions are metadata only: the model switches state
# instantaneously and the stored data depends only on the resulting V_TH.
WRITE_PULSE_VOLTS = 4.0
WRITE_PULSE_SECONDS = 1e-6

# Variability offsets are clamped to +/- 6 sigma of the nominal V_TH.
VTH_CLAMP_SIGMAS = 6.0


class VthState(IntEnum):
    """Programmed threshold state. LVT conducts at the read voltage, HVT is cut off."""

    LVT = 0
    HVT = 1


class PulsePolarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class SlopeMode(Enum):
    """Gate-voltage-to-current mapping: abrupt switch or finite subthreshold slope."""

    HARD_SWITCH = "hard_switch"
    SIGMOID = "sigmoid"


@dataclass
class DeviceParams:
    """FeFET switch parameters.

    Defaults give an on/off ratio of 1e6 with the read voltage (0.6 V) placed
    between the two threshold states. ``subthreshold_slope`` (V/decade) is
    only used in SIGMOID mode.
    """

    vth_low: float = 0.3
    vth_high: float = 1.5
    i_on: float = 10e-6
    i_off: float = 10e-12
    vth_sigma: float = 0.0
    slope_mode: SlopeMode = SlopeMode.HARD_SWITCH
    subthreshold_slope: float = 0.1

    def __post_init__(self):
        if not self.vth_low < self.vth_high:
            raise ValueError(f"vth_low ({self.vth_low}) must be < vth_high ({self.vth_high})")
        if not 0.0 < self.i_off < self.i_on:
            raise ValueError(f"need 0 < i_off < i_on, got i_off={self.i_off}, i_on={self.i_on}")
        if self.vth_sigma < 0.0:
            raise ValueError("vth_sigma must be >= 0")
        if self.subthreshold_slope <= 0.0:
            raise ValueError("subthreshold_slope must be > 0")

    def nominal_vth(self, state: VthState) -> float:
        return self.vth_low if state == VthState.LVT else self.vth_high

    def to_dict(self) -> dict:
        return {
            "vth_low": self.vth_low,
            "vth_high": self.vth_high,
            "i_on": self.i_on,
            "i_off": self.i_off,
            "vth_sigma": self.vth_sigma,
            "slope_mode": self.slope_mode.value,
            "subthreshold_slope": self.subthreshold_slope,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceParams":
        d = dict(d)
        if "slope_mode" in d:
            d["slope_mode"] = SlopeMode(d["slope_mode"])
        return cls(**d)


@dataclass
class FeFetDevice:
    """A single FeFET: programmed state plus its effective (sampled) V_TH."""

    state: VthState
    vth_effective: float


def sample_vth(state: VthState, params: DeviceParams, rng: np.random.Generator,
               size=None):
    """Draw effective V_TH for freshly programmed devices.

    Nominal V_TH of the state plus a Gaussian offset, clamped to
    +/- VTH_CLAMP_SIGMAS * vth_sigma so the effective value always stays
    inside the modeled variability band. ``size=None`` returns a scalar.
    """
    nominal = params.nominal_vth(state)
    if params.vth_sigma == 0.0:
        return nominal if size is None else np.full(size, nominal)
    bound = VTH_CLAMP_SIGMAS * params.vth_sigma
    offset = np.clip(rng.normal(0.0, params.vth_sigma, size=size), -bound, bound)
    return nominal + offset


def program(device: FeFetDevice, polarity: PulsePolarity, params: DeviceParams,
            rng: np.random.Generator) -> FeFetDevice:
    """Apply a write pulse: POSITIVE programs LVT, NEGATIVE programs HVT.

    The previous state is irrelevant (overwrite); V_TH variability is
    resampled at every program event.
    """
    state = VthState.LVT if polarity == PulsePolarity.POSITIVE else VthState.HVT
    return FeFetDevice(state=state, vth_effective=float(sample_vth(state, params, rng)))


def current_from_vth(vth_effective, v_gate, params: DeviceParams):
    """Drain current for the given effective V_TH and gate voltage.

    Works elementwise on numpy arrays (used by the array model) as well as
    on scalars. HARD_SWITCH: i_on strictly above V_TH, i_off otherwise.
    SIGMOID: log10(I) ramps linearly with gate overdrive at the configured
    subthreshold slope, centered so that zero overdrive sits at the log-space
    midpoint of [i_off, i_on], then clamps at the rails.
    """
    if params.slope_mode == SlopeMode.HARD_SWITCH:
        return np.where(np.asarray(v_gate) > np.asarray(vth_effective),
                        params.i_on, params.i_off)
    log_off = np.log10(params.i_off)
    log_on = np.log10(params.i_on)
    mid = 0.5 * (log_off + log_on)
    overdrive = np.asarray(v_gate, dtype=float) - np.asarray(vth_effective, dtype=float)
    log_i = np.clip(mid + overdrive / params.subthreshold_slope, log_off, log_on)
    return 10.0 ** log_i


def drain_current(device: FeFetDevice, v_gate: float, params: DeviceParams) -> float:
    return float(current_from_vth(device.vth_effective, v_gate, params))
