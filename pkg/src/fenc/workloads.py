"""Encryption/decryption latency for neural-network memory traffic.

Traffic model: every weight bit is decrypted once per inference (weights are
stored encrypted and read out for compute); every output bit is encrypted
once on store. Output traffic covers all layers by default, optionally just
the final layer. Compute time itself is out of scope; only the
encryption/decryption cycles of the two schemes are compared.

Workload descriptors are JSON data files (see scripts/gen_workloads.py for
the generator that derives them from standard layer shapes).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .perfmodel import AES_WORD_BITS, BaselineCosts, PerfConfig, dec_latency, enc_latency

REDUCTION_SCHEMA_VERSION = 1


@dataclass
class Layer:
    name: str
    weight_bits: int
    output_bits: int


@dataclass
class WorkloadSpec:
    name: str
    layers: list[Layer]

    @property
    def total_weight_bits(self) -> int:
        return sum(l.weight_bits for l in self.layers)

    def total_output_bits(self, scope: str = "all") -> int:
        if scope == "all":
            return sum(l.output_bits for l in self.layers)
        if scope == "final":
            return self.layers[-1].output_bits if self.layers else 0
        raise ValueError(f"unknown output scope {scope!r}")


@dataclass
class SchemeLatency:
    enc_cycles: float
    dec_cycles: float

    @property
    def total_cycles(self) -> float:
        return self.enc_cycles + self.dec_cycles


def load_workload(path) -> WorkloadSpec:
    """Parse and validate one workload descriptor file."""
    with open(path) as f:
        doc = json.load(f)
    if not isinstance(doc, dict) or "name" not in doc or "layers" not in doc:
        raise ValueError(f"{path}: workload must be an object with 'name' and 'layers'")
    layers = []
    for i, entry in enumerate(doc["layers"]):
        try:
            layer = Layer(name=str(entry["name"]),
                          weight_bits=int(entry["weight_bits"]),
                          output_bits=int(entry["output_bits"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"{path}: bad layer entry {i}: {e}") from e
        if layer.weight_bits < 0 or layer.output_bits < 0:
            raise ValueError(f"{path}: layer {layer.name!r} has negative bit counts")
        layers.append(layer)
    return WorkloadSpec(name=str(doc["name"]), layers=layers)


def load_workload_dir(path) -> list[WorkloadSpec]:
    files = sorted(Path(path).glob("*.json"))
    if not files:
        raise FileNotFoundError(f"no workload descriptors (*.json) in {path}")
    return [load_workload(p) for p in files]


def scheme_latency(spec: WorkloadSpec, scheme, output_scope: str = "all") -> SchemeLatency:
    """Total enc/dec cycles for one inference pass under the given scheme.

    ``scheme`` is a PerfConfig (in-situ array scheme) or BaselineCosts
    (AES accelerator). Bits are converted to words with a single ceiling over
    the workload's total traffic in each direction.
    """
    weight_bits = spec.total_weight_bits
    output_bits = spec.total_output_bits(output_scope)
    if isinstance(scheme, PerfConfig):
        dec = math.ceil(weight_bits / scheme.word_bits) * dec_latency(scheme)
        enc = math.ceil(output_bits / scheme.word_bits) * enc_latency(scheme)
    elif isinstance(scheme, BaselineCosts):
        dec = math.ceil(weight_bits / AES_WORD_BITS) * scheme.dec_cycles
        enc = math.ceil(output_bits / AES_WORD_BITS) * scheme.enc_cycles
    else:
        raise TypeError(f"scheme must be PerfConfig or BaselineCosts, got {type(scheme)}")
    return SchemeLatency(enc_cycles=float(enc), dec_cycles=float(dec))


@dataclass
class WorkloadReduction:
    workload: str
    aes_cycles: float
    insitu_cycles: float
    reduction: float


@dataclass
class ReductionReport:
    per_workload: list[WorkloadReduction]
    average_reduction: float
    output_scope: str = "all"

    def to_json_dict(self) -> dict:
        return {
            "schema_version": REDUCTION_SCHEMA_VERSION,
            "output_scope": self.output_scope,
            "workloads": [
                {"workload": w.workload, "aes_cycles": w.aes_cycles,
                 "insitu_cycles": w.insitu_cycles, "reduction": w.reduction}
                for w in self.per_workload
            ],
            "average_reduction": self.average_reduction,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["workload", "aes_cycles", "insitu_cycles", "reduction"])
        for w in self.per_workload:
            writer.writerow([w.workload, w.aes_cycles, w.insitu_cycles, repr(w.reduction)])
        return buf.getvalue()


def reduction_report(specs: list[WorkloadSpec], cfg: PerfConfig,
                     baseline: BaselineCosts, output_scope: str = "all") -> ReductionReport:
    """Per-workload latency reduction of the in-situ scheme vs. the baseline."""
    if not specs:
        raise ValueError("need at least one workload")
    rows = []
    for spec in specs:
        aes = scheme_latency(spec, baseline, output_scope).total_cycles
        ours = scheme_latency(spec, cfg, output_scope).total_cycles
        reduction = 1.0 - ours / aes if aes > 0 else 0.0
        rows.append(WorkloadReduction(spec.name, aes, ours, reduction))
    average = sum(r.reduction for r in rows) / len(rows)
    return ReductionReport(per_workload=rows, average_reduction=average,
                           output_scope=output_scope)
