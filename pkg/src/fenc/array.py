"""2-FeFET-per-cell memory array model.

Each logical cell pairs a top and a bottom FeFET. AND and NOR topologies sum
the two drain currents (parallel paths onto one sensed line); NAND takes the
minimum (series string, the off device limits the current). Writes follow
the flash-style sequence: block erase to HVT, then selective programming of
individual devices to LVT. A MemoryArray instance is single-writer;
concurrent read-only sensing is safe.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .device import (
    DeviceParams,
    FeFetDevice,
    VthState,
    current_from_vth,
    sample_vth,
)

STATE_DUMP_SCHEMA_VERSION = 1


class Topology(Enum):
    AND = "AND"
    NAND = "NAND"
    NOR = "NOR"


class Which(Enum):
    """Selects one FeFET of a cell as a program target."""

    TOP = "top"
    BOTTOM = "bottom"


@dataclass
class BiasPattern:
    """Gate voltages applied to the two FeFETs of a cell during one read step."""

    top_gate: float
    bottom_gate: float


@dataclass
class SenseResult:
    bits: np.ndarray
    cycles: int


def default_sense_threshold(device: DeviceParams) -> float:
    # Geometric mean of the lowest "high" current (single on path) and the
    # highest "low" current (two off paths): symmetric margin in log space.
    return math.sqrt(device.i_on * 2.0 * device.i_off)


@dataclass
class ArrayConfig:
    rows_logical: int = 128
    cols: int = 128
    topology: Topology = Topology.AND
    device: DeviceParams = field(default_factory=DeviceParams)
    sense_threshold: float | None = None
    num_sense_amps: int = 16
    block_rows: int = 128

    def __post_init__(self):
        if self.rows_logical < 1 or self.cols < 1:
            raise ValueError("rows_logical and cols must be >= 1")
        if self.num_sense_amps < 1:
            raise ValueError("num_sense_amps must be >= 1")
        if self.block_rows < 1:
            raise ValueError("block_rows must be >= 1")
        if self.sense_threshold is None:
            self.sense_threshold = default_sense_threshold(self.device)
        if not self.device.i_off < self.sense_threshold < self.device.i_on:
            raise ValueError(
                f"sense_threshold {self.sense_threshold} must lie strictly between "
                f"i_off {self.device.i_off} and i_on {self.device.i_on}")

    @property
    def n_blocks(self) -> int:
        return -(-self.rows_logical // self.block_rows)

    def block_row_range(self, block_index: int) -> tuple[int, int]:
        start = block_index * self.block_rows
        return start, min(start + self.block_rows, self.rows_logical)

    def to_dict(self) -> dict:
        return {
            "rows_logical": self.rows_logical,
            "cols": self.cols,
            "topology": self.topology.value,
            "device": self.device.to_dict(),
            "sense_threshold": self.sense_threshold,
            "num_sense_amps": self.num_sense_amps,
            "block_rows": self.block_rows,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArrayConfig":
        d = dict(d)
        if "topology" in d:
            d["topology"] = Topology(d["topology"])
        if "device" in d:
            d["device"] = DeviceParams.from_dict(d["device"])
        return cls(**d)


class MemoryArray:
    """Grid of 2-FeFET cells with erase/program/sense operations.

    Device states and effective V_TH values are held in numpy arrays of shape
    (rows_logical, cols) for the top and bottom devices separately. A fresh
    array comes up fully erased (all HVT at nominal V_TH).
    """

    def __init__(self, config: ArrayConfig):
        self.config = config
        shape = (config.rows_logical, config.cols)
        self.top_state = np.full(shape, VthState.HVT, dtype=np.uint8)
        self.bottom_state = np.full(shape, VthState.HVT, dtype=np.uint8)
        self.top_vth = np.full(shape, config.device.vth_high, dtype=np.float64)
        self.bottom_vth = np.full(shape, config.device.vth_high, dtype=np.float64)
        # Micro-step counters for write transactions: one erase pulse per
        # erase_block call, one program pulse per distinct physical row
        # (logical row x top/bottom) touched by a program call.
        self.erase_cycles = 0
        self.program_cycles = 0

    # -- addressing helpers -------------------------------------------------

    def _check_cell(self, row: int, col: int):
        if not (0 <= row < self.config.rows_logical and 0 <= col < self.config.cols):
            raise IndexError(f"cell ({row}, {col}) out of range for "
                             f"{self.config.rows_logical}x{self.config.cols} array")

    def cell(self, row: int, col: int) -> tuple[FeFetDevice, FeFetDevice]:
        self._check_cell(row, col)
        top = FeFetDevice(VthState(int(self.top_state[row, col])), float(self.top_vth[row, col]))
        bot = FeFetDevice(VthState(int(self.bottom_state[row, col])), float(self.bottom_vth[row, col]))
        return top, bot

    # -- write path ----------------------------------------------------------

    def erase_block(self, block_index: int, rng: np.random.Generator) -> None:
        """Reset every device in the block to HVT (body-potential style erase)."""
        if not 0 <= block_index < self.config.n_blocks:
            raise IndexError(f"block {block_index} out of range (have {self.config.n_blocks})")
        lo, hi = self.config.block_row_range(block_index)
        n = (hi - lo, self.config.cols)
        dev = self.config.device
        self.top_state[lo:hi] = VthState.HVT
        self.bottom_state[lo:hi] = VthState.HVT
        self.top_vth[lo:hi] = sample_vth(VthState.HVT, dev, rng, size=n)
        self.bottom_vth[lo:hi] = sample_vth(VthState.HVT, dev, rng, size=n)
        self.erase_cycles += 1

    def program_mask(self, top_mask: np.ndarray, bottom_mask: np.ndarray,
                     rng: np.random.Generator) -> None:
        """Program masked devices to LVT; everything else is left untouched."""
        dev = self.config.device
        self.top_state[top_mask] = VthState.LVT
        self.top_vth[top_mask] = sample_vth(VthState.LVT, dev, rng, size=int(top_mask.sum()))
        self.bottom_state[bottom_mask] = VthState.LVT
        self.bottom_vth[bottom_mask] = sample_vth(VthState.LVT, dev, rng,
                                                  size=int(bottom_mask.sum()))
        self.program_cycles += int(top_mask.any(axis=1).sum())
        self.program_cycles += int(bottom_mask.any(axis=1).sum())

    def program_selected(self, targets: list[tuple[int, int, Which]],
                         rng: np.random.Generator) -> None:
        """Program the listed (row, col, which) devices to LVT.

        Caller is expected to have erased the containing block first; this is
        the selective-program half of a write transaction.
        """
        shape = (self.config.rows_logical, self.config.cols)
        top_mask = np.zeros(shape, dtype=bool)
        bottom_mask = np.zeros(shape, dtype=bool)
        for row, col, which in targets:
            self._check_cell(row, col)
            if which == Which.TOP:
                top_mask[row, col] = True
            else:
                bottom_mask[row, col] = True
        self.program_mask(top_mask, bottom_mask, rng)

    # -- read path -----------------------------------------------------------

    def row_currents(self, row: int, top_gates: np.ndarray,
                     bottom_gates: np.ndarray) -> np.ndarray:
        """Per-column cell currents for one row under per-column gate biases."""
        dev = self.config.device
        i_top = current_from_vth(self.top_vth[row], top_gates, dev)
        i_bottom = current_from_vth(self.bottom_vth[row], bottom_gates, dev)
        if self.config.topology == Topology.NAND:
            return np.minimum(i_top, i_bottom)
        return i_top + i_bottom

    def read_cell_current(self, row: int, col: int, bias: BiasPattern) -> float:
        self._check_cell(row, col)
        dev = self.config.device
        i_top = float(current_from_vth(self.top_vth[row, col], bias.top_gate, dev))
        i_bottom = float(current_from_vth(self.bottom_vth[row, col], bias.bottom_gate, dev))
        if self.config.topology == Topology.NAND:
            return min(i_top, i_bottom)
        return i_top + i_bottom

    def sense_row(self, row: int, biases: list[BiasPattern], phases: int = 1) -> SenseResult:
        """Threshold the row's cell currents against the sense amplifiers.

        cycles = ceil(cols / num_sense_amps) * phases. ``phases`` is the
        number of read passes the bias schedule needs (2 for bit-granular
        keys on a shared wordline, else 1); it scales cost, not the bits.
        """
        self._check_cell(row, 0)
        if len(biases) != self.config.cols:
            raise ValueError(f"need {self.config.cols} biases, got {len(biases)}")
        if phases not in (1, 2):
            raise ValueError("phases must be 1 or 2")
        top_gates = np.array([b.top_gate for b in biases], dtype=np.float64)
        bottom_gates = np.array([b.bottom_gate for b in biases], dtype=np.float64)
        currents = self.row_currents(row, top_gates, bottom_gates)
        bits = (currents > self.config.sense_threshold).astype(np.uint8)
        cycles = sense_cycles(self.config.cols, self.config.num_sense_amps, phases)
        return SenseResult(bits=bits, cycles=cycles)

    # -- state dump/load -----------------------------------------------------

    def to_json_dict(self) -> dict:
        cells = []
        for r in range(self.config.rows_logical):
            row = []
            for c in range(self.config.cols):
                row.append({
                    "top": VthState(int(self.top_state[r, c])).name,
                    "top_vth": float(self.top_vth[r, c]),
                    "bottom": VthState(int(self.bottom_state[r, c])).name,
                    "bottom_vth": float(self.bottom_vth[r, c]),
                })
            cells.append(row)
        return {
            "schema_version": STATE_DUMP_SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "cells": cells,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MemoryArray":
        arr = cls(ArrayConfig.from_dict(d["config"]))
        for r, row in enumerate(d["cells"]):
            for c, cell in enumerate(row):
                arr.top_state[r, c] = VthState[cell["top"]]
                arr.top_vth[r, c] = cell["top_vth"]
                arr.bottom_state[r, c] = VthState[cell["bottom"]]
                arr.bottom_vth[r, c] = cell["bottom_vth"]
        return arr

    def save(self, path) -> None:
        with open(path, "w") as f:
            json.dump(self.to_json_dict(), f, indent=2, sort_keys=True)

    @classmethod
    def load(cls, path) -> "MemoryArray":
        with open(path) as f:
            return cls.from_json_dict(json.load(f))


def sense_cycles(cols: int, num_sense_amps: int, phases: int) -> int:
    return -(-cols // num_sense_amps) * phases
