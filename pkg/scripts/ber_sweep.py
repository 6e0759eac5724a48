#!/usr/bin/env python3
"""Sweep threshold-voltage variability and record the decrypted bit error rate.

For each sigma, a rows x cols array is encrypted with fresh random keys and
plaintext, read back with the correct keys, and the fraction of wrong bits
is averaged over several repetitions. Results go to stdout and a CSV.

Usage: python scripts/ber_sweep.py [--cells 10000] [--reps 5] [--out ber_sweep.csv]
"""
from __future__ import annotations

import argparse
import csv

import numpy as np

from fenc.array import ArrayConfig, MemoryArray
from fenc.cipher import KeyGranularity, KeyStore, decrypt_read, encrypt_write
from fenc.device import DeviceParams

DEFAULT_SIGMAS = [0.0, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4]


def ber_once(sigma: float, rows: int, cols: int, rng: np.random.Generator) -> float:
    params = DeviceParams(vth_sigma=sigma)
    cfg = ArrayConfig(rows_logical=rows, cols=cols, block_rows=rows, device=params)
    arr = MemoryArray(cfg)
    pt = rng.integers(0, 2, (rows, cols), dtype=np.uint8)
    keys = KeyStore.random(KeyGranularity.PER_BIT, rows, cols, rng, block_rows=rows)
    encrypt_write(arr, 0, pt, keys, rng)
    recovered, _ = decrypt_read(arr, 0, (rows, cols), keys)
    return float(np.mean(recovered != pt))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cells", type=int, default=10_000,
                        help="cells per population (square-ish array)")
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sigmas", type=float, nargs="+", default=DEFAULT_SIGMAS)
    parser.add_argument("--out", default="ber_sweep.csv")
    args = parser.parse_args(argv)

    rows = int(np.sqrt(args.cells))
    cols = -(-args.cells // rows)
    print(f"population {rows}x{cols} cells, {args.reps} reps per sigma")

    results = []
    for sigma in args.sigmas:
        rng = np.random.default_rng([args.seed, int(sigma * 1e6)])
        bers = [ber_once(sigma, rows, cols, rng) for _ in range(args.reps)]
        mean, std = float(np.mean(bers)), float(np.std(bers))
        results.append((sigma, mean, std))
        print(f"sigma={sigma:5.2f} V  BER={mean:.5f} +/- {std:.5f}")

    with open(args.out, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["vth_sigma", "ber_mean", "ber_std", "reps", "cells"])
        for sigma, mean, std in results:
            writer.writerow([sigma, mean, std, args.reps, rows * cols])
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
