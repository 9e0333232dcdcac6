import json
import subprocess
import sys
from pathlib import Path

from partabel.cli import main

PKG_ROOT = Path(__file__).resolve().parents[1]


def run_cli(args, tmp_path, name="report.json"):
    out = tmp_path / name
    code = main(list(args) + ["--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


def test_dims_command(tmp_path):
    code, rep = run_cli(["dims"], tmp_path)
    assert code == 0
    assert rep["schema"] == "partabel-report/1"
    assert rep["verdict"]["ok"]
    assert rep["results"]["per_degree"]["10"]["enumerated"] == 4093


def test_verify42_command(tmp_path):
    code, rep = run_cli(["verify42", "--chart", "2,3,7", "--seed", "4"], tmp_path)
    assert code == 0
    assert rep["results"]["rational"]["rank"] == 42
    assert rep["results"]["rational"]["degree4_bound"] == 19
    prime_keys = [k for k in rep["results"] if k.startswith("prime_")]
    assert len(prime_keys) == 2
    for k in prime_keys:
        assert rep["results"][k]["rank"] == 42


def test_scan_and_bound_commands(tmp_path):
    code, rep = run_cli(["scan", "--chart", "2,3,7", "--mode", "prime"], tmp_path)
    assert code == 0
    assert rep["results"]["stabilized_at"] == 4
    assert rep["results"]["certificate"]["dimension_bound"] == 18
    assert len(rep["results"]["certificate"]["structure_constants_digest"]) == 64
    code, rep = run_cli(["bound", "--chart", "2,3,7", "--nmax", "4", "--mode", "prime"], tmp_path)
    assert code == 0
    assert rep["results"]["per_degree"]["4"]["quotient_bound"] <= 19


def test_classify_command_examples(tmp_path):
    code, rep = run_cli(["classify", "--point", "1,0,0,0"], tmp_path)
    assert code == 0 and rep["results"]["verdict"] == "quadric_point_mid_inf"
    code, rep = run_cli(["classify", "--point", "1:2:2:4"], tmp_path)
    assert code == 0 and rep["results"]["verdict"] == "quadric_k9_mid1"
    code, rep = run_cli(["classify", "--point", "1,0,0,-1"], tmp_path)
    assert code == 0 and rep["results"]["verdict"] == "known_infinite_dim"


def test_sigma_and_zcentral(tmp_path):
    code, rep = run_cli(["sigma"], tmp_path)
    assert code == 0 and rep["verdict"]["ok"]
    code, rep = run_cli(["zcentral"], tmp_path)
    assert code == 0 and rep["results"]["central"]


def test_theorem_single_point(tmp_path):
    code, rep = run_cli(["theorem", "--chart", "2,3,7", "--seed", "8"], tmp_path)
    assert code == 0
    pt = rep["results"]["points"][0]
    assert pt["verdict_ok"]
    runs = pt["runs"]
    assert len(runs) == 2  # two primes
    for r in runs:
        assert r["upper_bound"] == 18 and r["lower_bound"] == 18
        assert r["exact_dimension"] == 18


def test_theorem_known_bad_point_exits_2(tmp_path):
    code, rep = run_cli(["theorem", "--point", "1,0,0,-1"], tmp_path)
    assert code == 2
    assert not rep["verdict"]["ok"]


def test_wedderburn_quadric_point_exits_2(tmp_path):
    code, _ = run_cli(["wedderburn", "--point", "1,2,2,4"], tmp_path)
    assert code == 2


def test_usage_error_exits_1(tmp_path):
    assert main(["classify", "--point", "1,2"]) == 1


def test_determinism_byte_identical(tmp_path):
    code1, _ = run_cli(["theorem", "--chart", "2,3,7", "--seed", "5"], tmp_path, "a.json")
    code2, _ = run_cli(["theorem", "--chart", "2,3,7", "--seed", "5"], tmp_path, "b.json")
    assert code1 == code2 == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_seed_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PARTABEL_SEED", "12345")
    from partabel.cli import build_parser
    cfg = build_parser().parse_args(["dims"])
    assert cfg.seed == 12345


def test_cli_entry_point_subprocess(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "partabel", "dims", "--out", str(tmp_path / "r.json")],
        capture_output=True, text=True, cwd=str(PKG_ROOT))
    assert proc.returncode == 0
    assert "PASS dims" in proc.stdout


def test_explicit_primes_flag(tmp_path):
    code, rep = run_cli(["verify42", "--chart", "2,3,7",
                         "--primes", "1099511627791,2199023255579"], tmp_path)
    assert code == 0
    assert "prime_1099511627791" in rep["results"]
    assert "prime_2199023255579" in rep["results"]


def test_force_flag_at_degenerate_point_exits_2(tmp_path):
    code, _ = run_cli(["wedderburn", "--point", "1,1,2,3", "--force",
                       "--nmax", "5", "--slack", "1"], tmp_path)
    assert code == 2


def test_window_cap_flag(tmp_path):
    code, rep = run_cli(["scan", "--point", "1,0,0,-1", "--slack", "4",
                         "--window-cap", "8"], tmp_path)
    assert code == 0
    assert rep["results"]["window"] == 8
