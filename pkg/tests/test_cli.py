import json
import subprocess
import sys

import pytest

from figprimes.cli import parse_epsilon, run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_census_text(capsys):
    assert run(["census", "--n", "12", "--parity", "even"]) == 0
    out = capsys.readouterr().out
    assert "l = 17" in out and "l1 = 5" in out and "l2 = 12" in out


def test_census_json_and_csv(capsys):
    assert run(["census", "--n", "12", "--parity", "odd", "--format", "json"]) == 0
    d = _json(capsys)
    assert (d["m"], d["m1"], d["m2"], d["target"]) == (17, 7, 10, 25)
    assert run(["census", "--n", "12", "--parity", "even", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "24,even,17,5,12"


def test_verify_usage_error(capsys):
    assert run(["verify", "--max", "1"]) == 2
    assert run(["verify", "--max", "100", "--from", "200"]) == 2
    assert run(["census", "--n", "2", "--parity", "even"]) == 2
    assert run(["bogus"]) == 2


def test_verify_reports(tmp_path, capsys):
    report = tmp_path / "r.json"
    wit = tmp_path / "w.csv"
    assert run(["verify", "--max", "5000", "--report", str(report), "--witnesses", str(wit)]) == 0
    d = json.loads(report.read_text())
    assert d["exceptions"] == [] and d["checked"] == 4999 and "seconds" not in d
    assert wit.read_text().splitlines()[:3] == ["n,a,b", "2,1,1", "3,1,2"]


def test_verify_deterministic_across_jobs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "--max", "30000", "--report", str(a), "--chunk-size", "7000"]) == 0
    assert run(["verify", "--max", "30000", "--report", str(b), "--chunk-size", "7000", "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cache_warm_equals_cold(tmp_path, capsys):
    cache = tmp_path / "fig.fgp"
    cold, warm = tmp_path / "cold.json", tmp_path / "warm.json"
    assert run(["verify", "--max", "20000", "--cache", str(cache), "--report", str(cold)]) == 0
    assert cache.exists()
    assert run(["verify", "--max", "20000", "--cache", str(cache), "--report", str(warm)]) == 0
    assert cold.read_bytes() == warm.read_bytes()


def test_corrupt_cache_exit_3(tmp_path, capsys):
    cache = tmp_path / "fig.fgp"
    assert run(["sieve", "--max", "1000", "--cache", str(cache)]) == 0
    blob = bytearray(cache.read_bytes())
    blob[20] ^= 0xFF
    cache.write_bytes(bytes(blob))
    assert run(["verify", "--max", "1000", "--cache", str(cache)]) == 3
    assert "ChecksumMismatchError" in capsys.readouterr().err


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FIGPRIMES_CACHE_DIR", str(tmp_path / "cache"))
    assert run(["sieve", "--max", "300"]) == 0
    assert (tmp_path / "cache" / "figurate-300.fgp").exists()


def test_sieve_emit(tmp_path, capsys):
    emit = tmp_path / "v.csv"
    assert run(["sieve", "--max", "30", "--emit", str(emit), "--format", "json"]) == 0
    assert _json(capsys) == {"max_n": 30, "count": 21}
    rows = emit.read_text().splitlines()
    assert rows[0] == "value,p,r,s" and rows[1] == "1,2,1,0" and len(rows) == 22
    assert "6,2,2,2" in rows and "21,7,1,2" in rows


def test_formula(capsys):
    assert run(["formula", "--n", "12", "--parity", "even", "--format", "json"]) == 0
    d = _json(capsys)
    assert d["value"] == pytest.approx(32.61938, abs=1e-5) and d["positive"] and d["witness"] == [1, 23]
    assert run(["formula", "--n", "12", "--parity", "odd", "--format", "json"]) == 0
    assert _json(capsys)["value"] == pytest.approx(6.93147, abs=1e-5)


def test_taylor_outputs(capsys, tmp_path):
    assert run(["taylor", "--n", "12", "--parity", "even", "--format", "json"]) == 0
    d = _json(capsys)
    assert d["slope"] >= 3.5 and len(d["epsilon"]) == 9
    assert run(["taylor", "--n", "12", "--parity", "odd", "--eps-min", "2^-10", "--eps-max", "2^-5",
                "--format", "csv", "-o", str(tmp_path / "t.csv")]) == 0
    assert len((tmp_path / "t.csv").read_text().splitlines()) == 7
    assert run(["taylor", "--n", "12", "--parity", "odd", "--eps-min", "0.1", "--eps-max", "0.1"]) == 2


def test_audit_and_stats(capsys):
    assert run(["audit", "--n", "12", "--parity", "even", "--format", "json"]) == 0
    assert all(r["passed"] for r in _json(capsys))
    assert run(["stats", "--max", "30", "--format", "json"]) == 0
    assert _json(capsys) == {"max_n": 30, "figurate_primes": 21, "primes": 10}


def test_parse_epsilon():
    assert parse_epsilon("2^-12") == 2.0**-12
    assert parse_epsilon("0.25") == 0.25


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "figprimes", "census", "--n", "4", "--parity", "odd"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "m2 = 8" in proc.stdout
