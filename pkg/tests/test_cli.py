import io
import json
import pathlib
import subprocess
import sys

import pytest

from pointless.cli import main

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

CURVE_F5 = '{"p":5,"r":1,"modulus":[0,1],"f":[[1],[0],[4],[0],[0],[0],[1]]}'
POINTLESS_F3 = '{"p":3,"r":1,"modulus":[0,1],"f":[[2],[0],[0],[0],[1],[0],[2]]}'
AMPLIFIABLE_F3 = '{"p":3,"r":1,"modulus":[0,1],"f":[[2],[0],[2],[0],[2],[0],[2]]}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_census_json_golden(capsys):
    code, out, _ = run_cli(capsys, "census", "--p", "5", "--format", "json")
    assert code == 0
    assert out == '{"count":2,"largest":7,"missed":[3,7],"p":5}\n'


def test_census_csv(capsys):
    code, out, _ = run_cli(capsys, "census", "--p", "5", "--format", "csv")
    assert code == 0
    assert out == "p,missed\n5,3;7\n"


def test_count_golden(capsys):
    code, out, _ = run_cli(capsys, "count", "--curve", CURVE_F5)
    assert code == 0
    assert out == '{"N":12,"affine":10,"infinity":2}\n'


def test_twist_golden(capsys):
    code, out, _ = run_cli(capsys, "twist", "--curve", CURVE_F5)
    assert code == 0
    assert out == '{"f":[[2],[0],[3],[0],[0],[0],[2]],"modulus":[0,1],"p":5,"r":1}\n'


def test_construct_emits_verified_certificate(capsys):
    code, out, _ = run_cli(capsys, "construct", "--p", "5", "--genus", "8")
    assert code == 0
    cert = json.loads(out)
    assert cert["method"] == "modp"
    assert cert["params"] == {"a": 3, "l": 2}
    assert cert["N"] == 0
    assert cert["verified"] == {"count": True, "squarefree": True}


def test_identical_invocations_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "construct", "--p", "13", "--genus", "30")
    _, second, _ = run_cli(capsys, "construct", "--p", "13", "--genus", "30")
    assert first == second


def test_construct_not_found_exits_one(capsys):
    # every rule declines g=3 over GF(5); that is a result, not an error
    code, out, err = run_cli(capsys, "construct", "--p", "5", "--genus", "3")
    assert code == 1
    assert out == ""
    assert "no construction" in err


def test_table_figure1_matches_fixture(capsys):
    code, out, _ = run_cli(capsys, "table", "--figure", "1", "--format", "csv")
    assert code == 0
    assert out == (FIXTURES / "figure1.csv").read_text()


def test_table_figure2_matches_fixture(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--figure", "2", "--format", "csv", "--threads", "4"
    )
    assert code == 0
    assert out == (FIXTURES / "figure2.csv").read_text()


def test_double_golden(capsys):
    code, out, _ = run_cli(capsys, "double", "--curve", POINTLESS_F3)
    assert code == 0
    assert json.loads(out)["f"] == [
        [2], [0], [0], [0], [0], [0], [0], [0], [1], [0], [0], [0], [2],
    ]


def test_verify_round_trip_passes(capsys):
    _, cert_json, _ = run_cli(capsys, "construct", "--p", "5", "--genus", "8")
    code, out, _ = run_cli(capsys, "verify", "--payload", cert_json.strip())
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["recount"] == 0
    assert all(report["checks"].values())


def test_verify_detects_tampered_count(capsys, tmp_path):
    _, cert_json, _ = run_cli(capsys, "construct", "--p", "5", "--genus", "8")
    cert = json.loads(cert_json)
    cert["N"] = 7
    payload = tmp_path / "tampered.json"
    payload.write_text(json.dumps(cert))
    code, out, err = run_cli(capsys, "verify", "--payload", f"@{payload}")
    assert code == 3
    report = json.loads(out)
    assert report["ok"] is False
    assert report["checks"]["count"] is False
    assert "count" in err


def test_verify_rejects_non_squarefree_curve(capsys):
    bad = '{"p":5,"r":1,"modulus":[0,1],"f":[[0],[0],[1]]}'
    code, _, err = run_cli(capsys, "verify", "--payload", bad)
    assert code == 2
    assert "gcd" in err


def test_payload_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(CURVE_F5))
    code, out, _ = run_cli(capsys, "count", "--curve", "-")
    assert code == 0
    assert json.loads(out)["N"] == 12


def test_malformed_json_exits_two(capsys):
    code, _, err = run_cli(capsys, "count", "--curve", "{nope")
    assert code == 2
    assert err


def test_composite_characteristic_exits_two(capsys):
    code, _, err = run_cli(capsys, "census", "--p", "9")
    assert code == 2
    assert "prime" in err


def test_unknown_command_is_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_exhaustive_found(capsys):
    code, out, _ = run_cli(capsys, "exhaustive", "--p", "3", "--genus", "2")
    assert code == 0
    assert json.loads(out)["f"] == [[2], [0], [0], [0], [1], [0], [2]]


def test_exhaustive_not_found_exits_one(capsys):
    code, out, err = run_cli(capsys, "exhaustive", "--p", "13", "--genus", "2")
    assert code == 1
    assert out == ""
    assert "exhausted" in err


def test_exhaustive_over_extension_field(capsys):
    code, out, _ = run_cli(capsys, "exhaustive", "--p", "3", "--r", "2", "--genus", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["r"] == 2
    # feeding the result back through count must report zero points
    code, out, _ = run_cli(capsys, "count", "--curve", json.dumps(payload))
    assert code == 0
    assert json.loads(out)["N"] == 0


def test_factor_explore_known_amplification(capsys):
    code, out, _ = run_cli(capsys, "factor-explore", "--curve", AMPLIFIABLE_F3)
    assert code == 0
    cert = json.loads(out)
    assert cert["method"] == "factor_2g_minus_1"
    assert cert["N"] == 0


def test_factor_explore_2g_miss_is_exit_one(capsys):
    code, out, err = run_cli(
        capsys,
        "factor-explore",
        "--curve", POINTLESS_F3,
        "--goal", "2g",
        "--search-budget", "300",
    )
    assert code == 1
    assert "experimental" in err


def test_report_writes_tables_and_charts(capsys, tmp_path):
    out_dir = tmp_path / "report"
    code, out, _ = run_cli(capsys, "report", "--out", str(out_dir), "--threads", "4")
    assert code == 0
    written = json.loads(out)["written"]
    assert set(written) == {
        "missed_small_primes.csv",
        "summary_wide.csv",
        "summary.json",
        "missed_small_primes.png",
        "summary_wide.png",
    }
    assert (out_dir / "missed_small_primes.csv").read_text() == (
        FIXTURES / "figure1.csv"
    ).read_text()
    assert (out_dir / "summary_wide.csv").read_text() == (
        FIXTURES / "figure2.csv"
    ).read_text()
    summary = json.loads((out_dir / "summary.json").read_text())
    assert len(summary["discrepancies"]) == 7
    assert len(summary["small_primes"]) == 8
    assert len(summary["wide"]) == 16
    for name in ("missed_small_primes.png", "summary_wide.png"):
        assert (out_dir / name).stat().st_size > 1000


def test_console_script_is_wired():
    out = subprocess.run(
        ["pointless", "census", "--p", "5", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout == '{"count":2,"largest":7,"missed":[3,7],"p":5}\n'
