"""Global JSON configuration shared by the CLI commands.

A single file can override any subset of the device, array, performance,
baseline, and read-voltage sections; omitted fields keep their defaults.
The path comes from --config or, failing that, the FENC_CONFIG environment
variable.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .array import ArrayConfig
from .cipher import ReadVoltages
from .device import DeviceParams
from .perfmodel import BaselineCosts, PerfConfig

ENV_CONFIG_VAR = "FENC_CONFIG"


@dataclass
class GlobalConfig:
    device: DeviceParams = field(default_factory=DeviceParams)
    array: ArrayConfig = field(default_factory=ArrayConfig)
    perf: PerfConfig = field(default_factory=PerfConfig)
    baseline: BaselineCosts = field(default_factory=BaselineCosts)
    read_voltages: ReadVoltages = field(default_factory=ReadVoltages)
    seed: int = 0

    def __post_init__(self):
        # The array always carries the device parameters; a bare "device"
        # section is folded into the array so both stay consistent.
        self.array.device = self.device

    def to_dict(self) -> dict:
        return {
            "device": self.device.to_dict(),
            "array": self.array.to_dict(),
            "perf": self.perf.to_dict(),
            "baseline": self.baseline.to_dict(),
            "read_voltages": self.read_voltages.to_dict(),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GlobalConfig":
        device = DeviceParams.from_dict(d.get("device", {}))
        array_section = dict(d.get("array", {}))
        array_section.pop("device", None)
        array = ArrayConfig(device=device, **array_section)
        return cls(
            device=device,
            array=array,
            perf=PerfConfig.from_dict(d.get("perf", {})),
            baseline=BaselineCosts.from_dict(d.get("baseline", {})),
            read_voltages=ReadVoltages.from_dict(d.get("read_voltages", {})),
            seed=int(d.get("seed", 0)),
        )

    @classmethod
    def load(cls, path=None) -> "GlobalConfig":
        """Load from an explicit path, else $FENC_CONFIG, else defaults."""
        if path is None:
            path = os.environ.get(ENV_CONFIG_VAR)
        if path is None:
            return cls()
        with open(path) as f:
            return cls.from_dict(json.load(f))
