"""Stolen-memory attack simulation.

The attacker model is maximal physical access: noiseless current sensing of
every cell, any number of times, with any guessed key. Because readout
computes stored-ciphertext XOR guessed-key, a guess K' recovers
PT ^ K ^ K' bit for bit, so per-trial accuracy equals the fraction of key
bits guessed correctly. Trials are independent and reproducible: trial i
derives its random stream from (master_seed, i), so results do not depend
on execution order.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .array import ArrayConfig, MemoryArray
from .cipher import (
    KeyGranularity,
    KeyStore,
    ReadVoltages,
    checkerboard,
    decrypt_read,
    encrypt_write,
)

ATTACK_REPORT_SCHEMA_VERSION = 1


class AttackScenario(Enum):
    CORRECT_KEYS = "correct"
    ALL_ZERO_KEYS = "all-zero"
    RANDOM_KEYS = "random"


@dataclass
class AttackReport:
    scenario: AttackScenario
    trials: int
    accuracy_mean: float
    accuracy_std: float
    per_trial: list[float] = field(default_factory=list)
    bits_per_trial: int = 0
    master_seed: int = 0

    def to_json_dict(self) -> dict:
        return {
            "schema_version": ATTACK_REPORT_SCHEMA_VERSION,
            "scenario": self.scenario.value,
            "trials": self.trials,
            "bits_per_trial": self.bits_per_trial,
            "master_seed": self.master_seed,
            "accuracy_mean": self.accuracy_mean,
            "accuracy_std": self.accuracy_std,
            "per_trial": self.per_trial,
        }

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["trial", "scenario", "accuracy"])
        for i, acc in enumerate(self.per_trial):
            writer.writerow([i, self.scenario.value, repr(acc)])
        return buf.getvalue()

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def attack_readout(array: MemoryArray, keys_guess: KeyStore,
                   voltages: ReadVoltages | None = None) -> np.ndarray:
    """Full-array readout with a guessed key (physical-access attacker)."""
    bits, _ = decrypt_read(array, 0, (array.config.rows_logical, array.config.cols),
                           keys_guess, voltages)
    return bits


def accuracy(recovered: np.ndarray, pt: np.ndarray) -> float:
    recovered = np.asarray(recovered)
    pt = np.asarray(pt)
    if recovered.shape != pt.shape:
        raise ValueError(f"shape mismatch: {recovered.shape} vs {pt.shape}")
    return float(np.mean(recovered == pt))


def _trial_pt(pattern: str, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    if pattern == "checkerboard":
        return checkerboard(rows, cols)
    if pattern == "uniform":
        return rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
    raise ValueError(f"unknown pt pattern {pattern!r}")


def run_single_trial(array_cfg: ArrayConfig, granularity: KeyGranularity,
                     scenario: AttackScenario, rng: np.random.Generator,
                     pt_pattern: str = "uniform",
                     voltages: ReadVoltages | None = None) -> float:
    """One encrypt-then-attack round; returns the recovery accuracy."""
    rows, cols = array_cfg.rows_logical, array_cfg.cols
    true_keys = KeyStore.random(granularity, rows, cols, rng,
                                block_rows=array_cfg.block_rows)
    pt = _trial_pt(pt_pattern, rows, cols, rng)
    array = MemoryArray(array_cfg)
    for block in range(array_cfg.n_blocks):
        lo, hi = array_cfg.block_row_range(block)
        encrypt_write(array, lo, pt[lo:hi], true_keys, rng)

    if scenario == AttackScenario.CORRECT_KEYS:
        guess = true_keys
    elif scenario == AttackScenario.ALL_ZERO_KEYS:
        guess = KeyStore.zeros(granularity, rows, cols, block_rows=array_cfg.block_rows)
    else:
        guess = KeyStore.random(granularity, rows, cols, rng,
                                block_rows=array_cfg.block_rows)
    recovered = attack_readout(array, guess, voltages)
    return accuracy(recovered, pt)


def run_trials(array_cfg: ArrayConfig, granularity: KeyGranularity,
               scenario: AttackScenario, n_trials: int, master_seed: int,
               pt_pattern: str = "uniform",
               voltages: ReadVoltages | None = None) -> AttackReport:
    """Monte Carlo attack campaign with fresh keys and plaintext per trial."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    per_trial = []
    for i in range(n_trials):
        rng = np.random.default_rng([master_seed, i])
        per_trial.append(run_single_trial(array_cfg, granularity, scenario, rng,
                                          pt_pattern, voltages))
    arr = np.array(per_trial)
    return AttackReport(
        scenario=scenario,
        trials=n_trials,
        accuracy_mean=float(arr.mean()),
        accuracy_std=float(arr.std()),
        per_trial=per_trial,
        bits_per_trial=array_cfg.rows_logical * array_cfg.cols,
        master_seed=master_seed,
    )
