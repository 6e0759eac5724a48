import json
from pathlib import Path

import pytest

from fenc.cli import load_pt_file, main, parse_freq

REPO_ROOT = Path(__file__).resolve().parents[1]
WORKLOAD_DIR = str(REPO_ROOT / "workloads")
GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    return main([str(a) for a in argv])


def test_parse_freq_suffixes():
    assert parse_freq("25MHz") == 25e6
    assert parse_freq("50mhz") == 50e6
    assert parse_freq("1GHz") == 1e9
    assert parse_freq("2.5e7") == 25e6
    assert parse_freq("400kHz") == 400e3


def test_roundtrip_checkerboard_recovers(tmp_path):
    rc = run("--seed", 42, "--out", tmp_path, "roundtrip",
             "--rows", 4, "--cols", 7, "--pattern", "checkerboard")
    assert rc == 0
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["accuracy"] == 1.0
    assert doc["recovered"] == doc["pt"]
    assert len(doc["vth_map"]) == 8  # two physical rows per logical row
    assert doc["ct"] != doc["pt"]  # random keys actually encrypt something


def test_roundtrip_all_zero_attack_accuracy_is_zero_key_fraction(tmp_path):
    rc = run("--seed", 7, "--out", tmp_path, "roundtrip",
             "--rows", 4, "--cols", 7, "--attack", "all-zero")
    assert rc == 0
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    key_bits = []
    for line in doc["keys"]["hex_lines"]:
        value = int(line, 16) >> (len(line) * 4 - 7)
        key_bits += [(value >> (7 - 1 - c)) & 1 for c in range(7)]
    zero_fraction = key_bits.count(0) / len(key_bits)
    assert doc["attack"]["accuracy"] == pytest.approx(zero_fraction)


def test_roundtrip_empty_pt_file_is_usage_error(tmp_path):
    pt_file = tmp_path / "pt.txt"
    pt_file.write_text("")
    rc = run("--out", tmp_path, "roundtrip", "--pt-file", pt_file)
    assert rc == 2


def test_roundtrip_pt_file_and_key_file(tmp_path):
    pt_file = tmp_path / "pt.txt"
    pt_file.write_text("1010\n0101\n")
    key_file = tmp_path / "keys.txt"
    key_file.write_text("f\n0\n")  # per-bit: row0 keys 1111, row1 keys 0000
    rc = run("--seed", 1, "--out", tmp_path, "roundtrip",
             "--pt-file", pt_file, "--key-file", key_file,
             "--granularity", "per_bit")
    assert rc == 0
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["pt"] == [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert doc["ct"] == [[0, 1, 0, 1], [0, 1, 0, 1]]
    assert doc["accuracy"] == 1.0


def test_load_pt_file_rejects_ragged_rows(tmp_path):
    pt_file = tmp_path / "pt.txt"
    pt_file.write_text("101\n10\n")
    from fenc.cli import UsageError
    with pytest.raises(UsageError):
        load_pt_file(pt_file)


def test_attack_correct_scenario_mean_one(tmp_path):
    rc = run("--seed", 5, "--out", tmp_path, "attack", "--rows", 1, "--cols", 32,
             "--scenario", "correct", "--trials", 10)
    assert rc == 0
    doc = json.loads((tmp_path / "attack_report.json").read_text())
    assert doc["accuracy_mean"] == 1.0
    assert doc["trials"] == 10
    assert (tmp_path / "attack_report.csv").exists()


def test_attack_deterministic_given_seed(tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    for out in (out_a, out_b):
        rc = run("--seed", 11, "--out", out, "attack", "--rows", 1, "--cols", 64,
                 "--scenario", "random", "--trials", 20)
        assert rc == 0
    assert (out_a / "attack_report.json").read_bytes() == \
        (out_b / "attack_report.json").read_bytes()
    assert (out_a / "attack_report.csv").read_bytes() == \
        (out_b / "attack_report.csv").read_bytes()


def test_perf_defaults_match_golden(tmp_path):
    rc = run("--out", tmp_path, "perf")
    assert rc == 0
    assert (tmp_path / "perf_comparison.json").read_text() == \
        (GOLDEN / "perf_comparison.json").read_text()
    assert (tmp_path / "perf_comparison.csv").read_text() == \
        (GOLDEN / "perf_comparison.csv").read_text()


def test_perf_sa_override_full_row(tmp_path):
    rc = run("--out", tmp_path, "perf", "--sa", 128)
    assert rc == 0
    doc = json.loads((tmp_path / "perf_comparison.json").read_text())
    assert doc["insitu"]["dec_latency_cycles_by_granularity"]["per_block"] == 1
    assert doc["insitu"]["dec_latency_cycles_by_granularity"]["per_bit"] == 2


def test_perf_freq_override_doubles_throughput(tmp_path):
    rc = run("--out", tmp_path, "perf", "--freq", "50MHz")
    assert rc == 0
    doc = json.loads((tmp_path / "perf_comparison.json").read_text())
    assert doc["insitu"]["enc_throughput_mbps"] == 1280.0
    assert doc["insitu"]["dec_throughput_mbps"] == 800.0


def test_workloads_shipped_average(tmp_path):
    rc = run("--out", tmp_path, "workloads", "--dir", WORKLOAD_DIR)
    assert rc == 0
    doc = json.loads((tmp_path / "workload_reduction.json").read_text())
    assert len(doc["workloads"]) == 6
    assert doc["average_reduction"] == pytest.approx(0.90, abs=0.03)


def test_workloads_empty_dir_is_usage_error(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    rc = run("--out", tmp_path, "workloads", "--dir", empty)
    assert rc == 2


def test_config_file_and_seed_override(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({
        "seed": 123,
        "array": {"rows_logical": 2, "cols": 8, "block_rows": 2},
        "perf": {"num_sense_amps": 8},
    }))
    rc = run("--config", cfg_file, "--out", tmp_path, "roundtrip")
    assert rc == 0
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["seed"] == 123
    assert (doc["rows"], doc["cols"]) == (2, 8)
    rc = run("--config", cfg_file, "--seed", 9, "--out", tmp_path, "roundtrip")
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["seed"] == 9


def test_config_device_section_reaches_simulation(tmp_path):
    # sigma large enough to corrupt readout: proves the device section is live
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({
        "device": {"vth_sigma": 0.4},
        "array": {"rows_logical": 32, "cols": 32, "block_rows": 32},
    }))
    rc = run("--config", cfg_file, "--seed", 8, "--out", tmp_path, "roundtrip")
    assert rc == 1  # correct-key accuracy < 1.0 under heavy variability
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["accuracy"] < 1.0


def test_env_var_config_fallback(tmp_path, monkeypatch):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"seed": 77, "array": {
        "rows_logical": 1, "cols": 4, "block_rows": 1}}))
    monkeypatch.setenv("FENC_CONFIG", str(cfg_file))
    rc = run("--out", tmp_path, "roundtrip")
    assert rc == 0
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["seed"] == 77 and doc["cols"] == 4


def test_roundtrip_deterministic_bytes(tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    for out in (out_a, out_b):
        rc = run("--seed", 31, "--out", out, "roundtrip", "--rows", 3, "--cols", 5,
                 "--pattern", "random", "--attack", "random")
        assert rc == 0
    assert (out_a / "roundtrip.json").read_bytes() == (out_b / "roundtrip.json").read_bytes()


def test_global_flags_accepted_after_subcommand(tmp_path):
    rc = run("perf", "--format", "csv", "--out", tmp_path)
    assert rc == 0
    assert (tmp_path / "perf_comparison.csv").exists()
    assert not (tmp_path / "perf_comparison.json").exists()
    rc = run("roundtrip", "--rows", 2, "--cols", 4, "--seed", 3, "--out", tmp_path)
    assert rc == 0
    assert json.loads((tmp_path / "roundtrip.json").read_text())["seed"] == 3


def test_roundtrip_nand_topology(tmp_path):
    rc = run("--seed", 2, "--out", tmp_path, "roundtrip",
             "--rows", 4, "--cols", 7, "--topology", "NAND",
             "--granularity", "per_row")
    assert rc == 0
    doc = json.loads((tmp_path / "roundtrip.json").read_text())
    assert doc["topology"] == "NAND"
    assert doc["accuracy"] == 1.0
