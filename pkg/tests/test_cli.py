import json
import math

import pytest

from crwalk import ModelParams, critical_s, dominant
from crwalk.cli import main


def run(tmp_path, args, name="out.txt"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_bytes()


def test_spectrum_csv_deterministic(tmp_path):
    args = ["spectrum", "--S", "0.8", "--n-max", "3"]
    code1, b1 = run(tmp_path, args, "a.csv")
    code2, b2 = run(tmp_path, args, "b.csv")
    assert code1 == code2 == 0
    assert b1 == b2


def test_spectrum_json_round_trip(tmp_path):
    code, raw = run(tmp_path, ["spectrum", "--S", "1", "--n-max", "2",
                               "--format", "json"], "s.json")
    assert code == 0
    doc = json.loads(raw)
    assert doc["meta"]["schema_version"] == 1
    assert doc["meta"]["S"] == 1.0
    assert len(doc["rows"]) == 5
    row0 = doc["rows"][0]
    assert row0["lambda_re"] == dominant(ModelParams(1.0)).lam.real
    assert row0["lambda_im"] == 0.0
    for row in doc["rows"]:
        assert row["oracle_distance"] < 1e-8


def test_spectrum_csv_header(tmp_path):
    code, raw = run(tmp_path, ["spectrum", "--S", "0.5"], "h.csv")
    assert code == 0
    header = raw.split(b"\r\n")[0].decode()
    assert header == ("n,j,nu_re,nu_im,lambda_re,lambda_im,"
                      "residual,oracle_distance,asymptotic_gap")


def test_dimensional_triple_equivalent_to_speed(tmp_path):
    _, direct = run(tmp_path, ["critical", "--S", "0.5", "--n-max", "2"],
                    "d.csv")
    _, triple = run(tmp_path, ["critical", "--gamma", "1", "--mu", "4",
                               "--L", "0.5", "--n-max", "2"], "t.csv")
    # identical rows; only the parameter metadata differs (CSV has none)
    assert direct == triple


def test_critical_values(tmp_path):
    code, raw = run(tmp_path, ["critical", "--n-max", "2", "--format", "json"],
                    "c.json")
    assert code == 0
    rows = json.loads(raw)["rows"]
    assert rows[0]["S_m"] == critical_s(1).S_m
    assert rows[1]["S_m"] < rows[0]["S_m"]


def test_simulate_passes_rate_check(tmp_path):
    code, raw = run(tmp_path, ["simulate", "--S", "1", "--N", "400",
                               "--init", "box", "--format", "json"], "r.json")
    assert code == 0
    summary = json.loads(raw)["meta"]["summary"]
    assert summary["relative_rate_error"] < 0.01
    assert abs(summary["lambda0"] + 2.0) < 1e-12


def test_eigenfunction_rows_and_summary(tmp_path):
    code, raw = run(tmp_path, ["eigenfunction", "--S", "0.8", "--n", "3",
                               "--j", "2", "--N", "500", "--format", "json"],
                    "e.json")
    assert code == 0
    doc = json.loads(raw)
    assert len(doc["rows"]) == 501
    assert doc["meta"]["summary"]["half_turns_u"] == 3
    assert doc["meta"]["summary"]["half_turns_v"] == 3
    assert doc["rows"][0]["u_re"] == 0.0 and doc["rows"][0]["u_im"] == 0.0
    assert doc["rows"][-1]["v_re"] == 0.0


def test_csv_footer_comments(tmp_path):
    code, raw = run(tmp_path, ["eigenfunction", "--S", "0.05", "--n", "1",
                               "--N", "200"], "f.csv")
    assert code == 0
    footers = [l for l in raw.decode().split("\r\n") if l.startswith("# ")]
    assert "# half_turns_u=1" in footers
    assert "# n_expected=1" in footers


def test_usage_errors():
    assert main(["spectrum"]) == 64  # no parameters at all
    assert main(["spectrum", "--S", "1", "--gamma", "2"]) == 64  # both styles
    assert main(["nonsense"]) == 64
    assert main([]) == 64


def test_partial_dimensional_triple_is_usage_error():
    assert main(["spectrum", "--gamma", "2", "--mu", "4"]) == 64
