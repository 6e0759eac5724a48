"""Analytical latency/throughput/power/area model vs. an AES-accelerator baseline.

The in-situ scheme's encryption cost is a calibrated per-word constant
(erase + program + XOR); decryption cost follows the sense-amplifier
schedule: ceil(word_bits / num_sense_amps) cycles per phase, two phases for
bit-granular keys and one otherwise. The AES baseline is a fixed cost table
(cycles, throughput, power, area), not an AES implementation.

Decryption latency and throughput are deliberately decoupled: latency is
quoted for the configured key granularity (worst case: two-phase bit-wise
reads), while sustained throughput is quoted for the single-phase steady
state that row/block keys or phase pipelining achieve.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .cipher import DEFAULT_ENC_CYCLES_PER_ROW, KeyGranularity, phases_for

COMPARISON_SCHEMA_VERSION = 1

# The baseline cost table is quoted per 128-bit block.
AES_WORD_BITS = 128


@dataclass
class PerfConfig:
    word_bits: int = 128
    freq_hz: float = 25e6
    num_sense_amps: int = 16
    array_dim: tuple[int, int] = (128, 128)
    enc_cycles_per_word: int = DEFAULT_ENC_CYCLES_PER_ROW
    key_granularity: KeyGranularity = KeyGranularity.PER_BIT

    def __post_init__(self):
        if min(self.word_bits, self.num_sense_amps, self.enc_cycles_per_word) < 1:
            raise ValueError("word_bits, num_sense_amps, enc_cycles_per_word must be >= 1")
        if self.freq_hz <= 0:
            raise ValueError("freq_hz must be > 0")

    def to_dict(self) -> dict:
        return {
            "word_bits": self.word_bits,
            "freq_hz": self.freq_hz,
            "num_sense_amps": self.num_sense_amps,
            "array_dim": list(self.array_dim),
            "enc_cycles_per_word": self.enc_cycles_per_word,
            "key_granularity": self.key_granularity.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PerfConfig":
        d = dict(d)
        if "array_dim" in d:
            d["array_dim"] = tuple(d["array_dim"])
        if "key_granularity" in d:
            d["key_granularity"] = KeyGranularity(d["key_granularity"])
        return cls(**d)


@dataclass
class BaselineCosts:
    """Published cost constants of the reference AES accelerator."""

    enc_cycles: float = 115.5
    dec_cycles: float = 117.0
    throughput_mbps: float = 28.32
    power_mw: float = 0.031
    area_mm2: float = 0.00309

    def to_dict(self) -> dict:
        return {
            "enc_cycles": self.enc_cycles,
            "dec_cycles": self.dec_cycles,
            "throughput_mbps": self.throughput_mbps,
            "power_mw": self.power_mw,
            "area_mm2": self.area_mm2,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BaselineCosts":
        return cls(**d)


@dataclass
class SchemeMetrics:
    enc_latency_cycles: float
    dec_latency_cycles: float
    enc_throughput_mbps: float
    dec_throughput_mbps: float
    power_mw: float
    area_mm2: float


@dataclass
class ComparisonReport:
    insitu: SchemeMetrics
    baseline: SchemeMetrics
    enc_speedup: float
    dec_speedup: float
    dec_latency_by_granularity: dict = field(default_factory=dict)
    config: PerfConfig = field(default_factory=PerfConfig)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": COMPARISON_SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "insitu": {
                "enc_latency_cycles": self.insitu.enc_latency_cycles,
                "dec_latency_cycles": self.insitu.dec_latency_cycles,
                "dec_latency_cycles_by_granularity": self.dec_latency_by_granularity,
                "enc_throughput_mbps": self.insitu.enc_throughput_mbps,
                "dec_throughput_mbps": self.insitu.dec_throughput_mbps,
                "power_mw": self.insitu.power_mw,
                "power_note": "negligible (XOR gates only)",
                "area_mm2": self.insitu.area_mm2,
                "area_negligible": True,
            },
            "aes_baseline": {
                "enc_latency_cycles": self.baseline.enc_latency_cycles,
                "dec_latency_cycles": self.baseline.dec_latency_cycles,
                "enc_throughput_mbps": self.baseline.enc_throughput_mbps,
                "dec_throughput_mbps": self.baseline.dec_throughput_mbps,
                "power_mw": self.baseline.power_mw,
                "area_mm2": self.baseline.area_mm2,
            },
            "ratios": {
                "enc_speedup": self.enc_speedup,
                "dec_speedup": self.dec_speedup,
            },
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["scheme", "enc_latency_cycles", "dec_latency_cycles",
                         "enc_throughput_mbps", "dec_throughput_mbps",
                         "power_mw", "area_mm2", "enc_speedup", "dec_speedup"])
        for name, m, enc_s, dec_s in (
                ("insitu", self.insitu, self.enc_speedup, self.dec_speedup),
                ("aes_baseline", self.baseline, 1.0, 1.0)):
            writer.writerow([name, m.enc_latency_cycles, m.dec_latency_cycles,
                             m.enc_throughput_mbps, m.dec_throughput_mbps,
                             m.power_mw, m.area_mm2, enc_s, dec_s])
        return buf.getvalue()


def enc_latency(cfg: PerfConfig) -> int:
    """Write-transaction cycles per word (calibrated constant)."""
    return cfg.enc_cycles_per_word


def dec_latency(cfg: PerfConfig, granularity: KeyGranularity | None = None) -> int:
    """Read cycles per word: SA sweep count times the phase count."""
    granularity = granularity or cfg.key_granularity
    sweeps = -(-cfg.word_bits // cfg.num_sense_amps)
    return sweeps * phases_for(granularity)


def throughput_mbps(word_bits: int, cycles_per_word: float, freq_hz: float) -> float:
    if cycles_per_word < 1:
        raise ValueError("cycles_per_word must be >= 1")
    return word_bits * freq_hz / cycles_per_word / 1e6


def compare(cfg: PerfConfig, baseline: BaselineCosts) -> ComparisonReport:
    """Side-by-side cost table plus throughput ratios against the baseline."""
    enc_lat = enc_latency(cfg)
    dec_lat = dec_latency(cfg)
    by_gran = {g.value: dec_latency(cfg, g) for g in KeyGranularity}
    # Sustained decryption rate: single-phase steady state.
    dec_steady_cycles = dec_latency(cfg, KeyGranularity.PER_BLOCK)
    insitu = SchemeMetrics(
        enc_latency_cycles=enc_lat,
        dec_latency_cycles=dec_lat,
        enc_throughput_mbps=throughput_mbps(cfg.word_bits, enc_lat, cfg.freq_hz),
        dec_throughput_mbps=throughput_mbps(cfg.word_bits, dec_steady_cycles, cfg.freq_hz),
        power_mw=0.0,
        area_mm2=0.0,
    )
    base = SchemeMetrics(
        enc_latency_cycles=baseline.enc_cycles,
        dec_latency_cycles=baseline.dec_cycles,
        enc_throughput_mbps=baseline.throughput_mbps,
        dec_throughput_mbps=baseline.throughput_mbps,
        power_mw=baseline.power_mw,
        area_mm2=baseline.area_mm2,
    )
    return ComparisonReport(
        insitu=insitu,
        baseline=base,
        enc_speedup=insitu.enc_throughput_mbps / base.enc_throughput_mbps,
        dec_speedup=insitu.dec_throughput_mbps / base.dec_throughput_mbps,
        dec_latency_by_granularity=by_gran,
        config=cfg,
    )
