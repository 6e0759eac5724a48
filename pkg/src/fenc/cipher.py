"""In-situ XOR encryption and decryption on 2-FeFET cells.

Encryption is plain bit-wise XOR of plaintext with the key; the resulting
ciphertext bit selects which FeFET of the cell is programmed to LVT
(ct=0 -> top LVT / bottom HVT, ct=1 -> top HVT / bottom LVT). Decryption is
a normal array read whose gate biases depend on the key bit, so the XOR with
the key happens inside the sensing operation and only correct keys recover
the plaintext. Keys can be shared per bit, per row, or per erase block.

Bit-granular keys need two sensing phases per row: cells keyed 1 and cells
keyed 0 want different wordline biases, and all cells in a row share the
wordlines. Phase results are merged in a register bank at no extra cycle
cost beyond the second phase.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .array import BiasPattern, MemoryArray, Topology, sense_cycles
from .device import DeviceParams, VthState, current_from_vth

# Calibrated write-transaction cost per array row (erase + program micro-steps
# plus the XOR itself). The array's erase/program counters report the
# micro-step breakdown but do not override this constant.
DEFAULT_ENC_CYCLES_PER_ROW = 5


class KeyGranularity(Enum):
    PER_BIT = "per_bit"
    PER_ROW = "per_row"
    PER_BLOCK = "per_block"


@dataclass
class ReadVoltages:
    """Gate voltages used during decryption reads.

    AND/NOR use (v_r, 0): v_r must separate the two threshold states.
    NAND uses (v_r1, v_r2) with v_r1 above both thresholds and v_r2 between
    them, so a series string conducts only when v_r2 lands on an LVT device.
    """

    v_r: float = 0.6
    v_r1: float = 2.0
    v_r2: float = 0.6

    def to_dict(self) -> dict:
        return {"v_r": self.v_r, "v_r1": self.v_r1, "v_r2": self.v_r2}

    @classmethod
    def from_dict(cls, d: dict) -> "ReadVoltages":
        return cls(**d)


@dataclass
class CellEncoding:
    ct_bit: int
    top_state: VthState
    bottom_state: VthState


@dataclass(frozen=True, eq=False)
class KeyStore:
    """Key bits addressed at a fixed granularity over a rows x cols array.

    bits shape: (rows, cols) for PER_BIT, (rows,) for PER_ROW, (n_blocks,)
    for PER_BLOCK. ``encrypted=False`` marks a region carrying no key at all;
    it behaves exactly like all-zero per-block keys under this read model
    and exists so unencrypted regions can share the array code path.
    Immutable after construction.
    """

    granularity: KeyGranularity
    bits: np.ndarray
    rows: int
    cols: int
    block_rows: int = 1
    encrypted: bool = True

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        object.__setattr__(self, "bits", bits)
        if not np.isin(bits, (0, 1)).all():
            raise ValueError("key bits must be 0 or 1")
        if bits.shape != self._expected_shape():
            raise ValueError(f"{self.granularity.value} keys for a "
                             f"{self.rows}x{self.cols} array need shape "
                             f"{self._expected_shape()}, got {bits.shape}")

    def _expected_shape(self) -> tuple:
        if self.granularity == KeyGranularity.PER_BIT:
            return (self.rows, self.cols)
        if self.granularity == KeyGranularity.PER_ROW:
            return (self.rows,)
        return (self.n_blocks,)

    @property
    def n_blocks(self) -> int:
        return -(-self.rows // self.block_rows)

    def key_bit(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"({row}, {col}) outside {self.rows}x{self.cols} key space")
        if self.granularity == KeyGranularity.PER_BIT:
            return int(self.bits[row, col])
        if self.granularity == KeyGranularity.PER_ROW:
            return int(self.bits[row])
        return int(self.bits[row // self.block_rows])

    def expand(self, row_start: int, n_rows: int, n_cols: int) -> np.ndarray:
        """Key bit per cell for the addressed region, shape (n_rows, n_cols)."""
        if row_start < 0 or row_start + n_rows > self.rows or n_cols > self.cols:
            raise IndexError("region outside key address space")
        if self.granularity == KeyGranularity.PER_BIT:
            return self.bits[row_start:row_start + n_rows, :n_cols].copy()
        if self.granularity == KeyGranularity.PER_ROW:
            per_row = self.bits[row_start:row_start + n_rows]
        else:
            rows = np.arange(row_start, row_start + n_rows)
            per_row = self.bits[rows // self.block_rows]
        return np.broadcast_to(per_row[:, None], (n_rows, n_cols)).copy()

    # -- constructors ---------------------------------------------------------

    @classmethod
    def random(cls, granularity: KeyGranularity, rows: int, cols: int,
               rng: np.random.Generator, block_rows: int = 1) -> "KeyStore":
        shape = {
            KeyGranularity.PER_BIT: (rows, cols),
            KeyGranularity.PER_ROW: (rows,),
            KeyGranularity.PER_BLOCK: (-(-rows // block_rows),),
        }[granularity]
        bits = rng.integers(0, 2, size=shape, dtype=np.uint8)
        return cls(granularity, bits, rows, cols, block_rows)

    @classmethod
    def zeros(cls, granularity: KeyGranularity, rows: int, cols: int,
              block_rows: int = 1) -> "KeyStore":
        shape = {
            KeyGranularity.PER_BIT: (rows, cols),
            KeyGranularity.PER_ROW: (rows,),
            KeyGranularity.PER_BLOCK: (-(-rows // block_rows),),
        }[granularity]
        return cls(granularity, np.zeros(shape, dtype=np.uint8), rows, cols, block_rows)

    @classmethod
    def unencrypted(cls, rows: int, cols: int, block_rows: int = 1) -> "KeyStore":
        """No-key marker for unencrypted regions (reads like all-zero keys)."""
        store = cls.zeros(KeyGranularity.PER_BLOCK, rows, cols, block_rows)
        object.__setattr__(store, "encrypted", False)
        return store

    # -- hex key files ----------------------------------------------------------
    # PER_BIT: one hex line per row, column 0 is the most significant bit of
    # the line (line width = ceil(cols/4) digits). PER_ROW: one line per row,
    # "0" or "1". PER_BLOCK: one line per block, "0" or "1".

    def to_hex_text(self) -> str:
        lines = []
        if self.granularity == KeyGranularity.PER_BIT:
            width = -(-self.cols // 4)
            for r in range(self.rows):
                value = 0
                for c in range(self.cols):
                    value = (value << 1) | int(self.bits[r, c])
                value <<= (width * 4 - self.cols)  # pad on the right to a digit boundary
                lines.append(f"{value:0{width}x}")
        else:
            lines = [f"{int(b):x}" for b in self.bits]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_hex_text(cls, text: str, granularity: KeyGranularity, rows: int,
                      cols: int, block_rows: int = 1) -> "KeyStore":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if granularity == KeyGranularity.PER_BIT:
            if len(lines) != rows:
                raise ValueError(f"expected {rows} key lines, got {len(lines)}")
            width = -(-cols // 4)
            bits = np.zeros((rows, cols), dtype=np.uint8)
            for r, line in enumerate(lines):
                value = int(line, 16)
                value >>= (width * 4 - cols)
                for c in range(cols):
                    bits[r, c] = (value >> (cols - 1 - c)) & 1
        else:
            expected = rows if granularity == KeyGranularity.PER_ROW else -(-rows // block_rows)
            if len(lines) != expected:
                raise ValueError(f"expected {expected} key lines, got {len(lines)}")
            bits = np.array([int(ln, 16) for ln in lines], dtype=np.uint8)
        return cls(granularity, bits, rows, cols, block_rows)

    def save(self, path) -> None:
        with open(path, "w") as f:
            f.write(self.to_hex_text())

    @classmethod
    def load(cls, path, granularity: KeyGranularity, rows: int, cols: int,
             block_rows: int = 1) -> "KeyStore":
        with open(path) as f:
            return cls.from_hex_text(f.read(), granularity, rows, cols, block_rows)


def phases_for(granularity: KeyGranularity) -> int:
    """Sensing phases per row: bit-granular keys need two, coarser keys one."""
    return 2 if granularity == KeyGranularity.PER_BIT else 1


def xor_block(data: np.ndarray, key_bits: np.ndarray) -> np.ndarray:
    data = np.asarray(data, dtype=np.uint8)
    key_bits = np.asarray(key_bits, dtype=np.uint8)
    if data.shape != key_bits.shape:
        raise ValueError(f"shape mismatch: data {data.shape} vs keys {key_bits.shape}")
    return data ^ key_bits


def encode_cell(ct_bit: int) -> CellEncoding:
    """Map a ciphertext bit to the complementary device states of its cell."""
    if ct_bit not in (0, 1):
        raise ValueError("ct_bit must be 0 or 1")
    if ct_bit == 0:
        return CellEncoding(0, VthState.LVT, VthState.HVT)
    return CellEncoding(1, VthState.HVT, VthState.LVT)


def validate_read_voltages(topology: Topology, params: DeviceParams,
                           voltages: ReadVoltages) -> None:
    if topology == Topology.NAND:
        if not (voltages.v_r1 > params.vth_high > voltages.v_r2 > params.vth_low):
            raise ValueError(
                f"NAND read needs v_r1 > vth_high > v_r2 > vth_low, got "
                f"v_r1={voltages.v_r1}, vth_high={params.vth_high}, "
                f"v_r2={voltages.v_r2}, vth_low={params.vth_low}")
    else:
        if not (params.vth_low < voltages.v_r < params.vth_high):
            raise ValueError(
                f"AND/NOR read needs vth_low < v_r < vth_high, got "
                f"v_r={voltages.v_r} with vth_low={params.vth_low}, "
                f"vth_high={params.vth_high}")


def read_bias_for_key(key_bit: int, topology: Topology, params: DeviceParams,
                      voltages: ReadVoltages | None = None) -> BiasPattern:
    """Key-dependent gate biases for one cell.

    AND/NOR: key 1 puts v_r on the top FeFET, key 0 on the bottom one; the
    other gate stays at 0 V. NAND: key 0 applies (v_r1, v_r2) to
    (top, bottom), key 1 swaps them.
    """
    if key_bit not in (0, 1):
        raise ValueError("key_bit must be 0 or 1")
    voltages = voltages or ReadVoltages()
    validate_read_voltages(topology, params, voltages)
    if topology == Topology.NAND:
        if key_bit == 0:
            return BiasPattern(voltages.v_r1, voltages.v_r2)
        return BiasPattern(voltages.v_r2, voltages.v_r1)
    if key_bit == 1:
        return BiasPattern(voltages.v_r, 0.0)
    return BiasPattern(0.0, voltages.v_r)


def checkerboard(rows: int, cols: int, phase: int = 0) -> np.ndarray:
    """Alternating 1/0 test pattern; phase=0 puts a 1 at (0, 0)."""
    r = np.arange(rows)[:, None]
    c = np.arange(cols)[None, :]
    return ((r + c + phase + 1) % 2).astype(np.uint8)


def encrypt_write(array: MemoryArray, start_row: int, pt: np.ndarray,
                  keys: KeyStore, rng: np.random.Generator,
                  enc_cycles_per_row: int = DEFAULT_ENC_CYCLES_PER_ROW) -> int:
    """XOR-encrypt pt and store it as complementary cell states.

    The region must sit inside a single erase block: the block is erased to
    all-HVT, then the LVT device of each cell is programmed per the
    ciphertext bit. Returns the calibrated cycle cost of the transaction.
    """
    pt = np.asarray(pt, dtype=np.uint8)
    if pt.ndim != 2:
        raise ValueError("pt must be a 2-D bit matrix")
    n_rows, n_cols = pt.shape
    cfg = array.config
    if start_row < 0 or start_row + n_rows > cfg.rows_logical or n_cols > cfg.cols:
        raise IndexError("write region out of range")
    block = start_row // cfg.block_rows
    if (start_row + n_rows - 1) // cfg.block_rows != block:
        raise ValueError("write region spans multiple erase blocks; split it per block")

    ct = xor_block(pt, keys.expand(start_row, n_rows, n_cols))
    array.erase_block(block, rng)
    shape = (cfg.rows_logical, cfg.cols)
    top_mask = np.zeros(shape, dtype=bool)
    bottom_mask = np.zeros(shape, dtype=bool)
    # ct=0 -> top LVT, ct=1 -> bottom LVT (encode_cell's rule, vectorized)
    top_mask[start_row:start_row + n_rows, :n_cols] = ct == 0
    bottom_mask[start_row:start_row + n_rows, :n_cols] = ct == 1
    array.program_mask(top_mask, bottom_mask, rng)
    return enc_cycles_per_row * n_rows


def decrypt_read(array: MemoryArray, start_row: int, extent: tuple[int, int],
                 keys: KeyStore, voltages: ReadVoltages | None = None
                 ) -> tuple[np.ndarray, int]:
    """Read the region back with key-dependent biases.

    Bit-granular keys sense each row in two phases (key-1 columns first,
    key-0 columns second, unselected gates held at 0 V) and merge the
    results; row/block keys bias the whole row uniformly in one phase.
    Returns (bits, cycles) with cycles counted per the sense-amp schedule.
    """
    n_rows, n_cols = extent
    cfg = array.config
    if start_row < 0 or n_rows < 1 or start_row + n_rows > cfg.rows_logical:
        raise IndexError("read region out of range")
    if not 1 <= n_cols <= cfg.cols:
        raise IndexError("read region out of range")
    voltages = voltages or ReadVoltages()
    validate_read_voltages(cfg.topology, cfg.device, voltages)

    key_bits = keys.expand(start_row, n_rows, n_cols)
    if cfg.topology == Topology.NAND:
        sel_top = np.where(key_bits == 0, voltages.v_r1, voltages.v_r2)
        sel_bottom = np.where(key_bits == 0, voltages.v_r2, voltages.v_r1)
    else:
        sel_top = np.where(key_bits == 1, voltages.v_r, 0.0)
        sel_bottom = np.where(key_bits == 1, 0.0, voltages.v_r)

    phases = phases_for(keys.granularity)
    rows = slice(start_row, start_row + n_rows)

    def sense(top_gates, bottom_gates):
        dev = cfg.device
        i_top = current_from_vth(array.top_vth[rows, :n_cols], top_gates, dev)
        i_bottom = current_from_vth(array.bottom_vth[rows, :n_cols], bottom_gates, dev)
        currents = np.minimum(i_top, i_bottom) if cfg.topology == Topology.NAND \
            else i_top + i_bottom
        return (currents > cfg.sense_threshold).astype(np.uint8)

    if phases == 2:
        in_phase1 = key_bits == 1
        bits1 = sense(np.where(in_phase1, sel_top, 0.0), np.where(in_phase1, sel_bottom, 0.0))
        bits2 = sense(np.where(in_phase1, 0.0, sel_top), np.where(in_phase1, 0.0, sel_bottom))
        bits = np.where(in_phase1, bits1, bits2).astype(np.uint8)
    else:
        bits = sense(sel_top, sel_bottom)

    cycles = n_rows * sense_cycles(n_cols, cfg.num_sense_amps, phases)
    return bits, cycles
