"""Behavioral simulator and performance model for in-situ XOR encryption
in 2-FeFET-per-cell non-volatile memory arrays."""

from .array import ArrayConfig, BiasPattern, MemoryArray, SenseResult, Topology, Which
from .cipher import (
    KeyGranularity,
    KeyStore,
    ReadVoltages,
    checkerboard,
    decrypt_read,
    encode_cell,
    encrypt_write,
    read_bias_for_key,
    xor_block,
)
from .config import GlobalConfig
from .device import (
    DeviceParams,
    FeFetDevice,
    PulsePolarity,
    SlopeMode,
    VthState,
    drain_current,
    program,
)
from .perfmodel import BaselineCosts, PerfConfig, compare, dec_latency, enc_latency, throughput_mbps
from .threat import AttackReport, AttackScenario, accuracy, attack_readout, run_trials
from .workloads import WorkloadSpec, load_workload, reduction_report, scheme_latency

__version__ = "0.1.0"
