import csv
import json
import subprocess
import sys

import pytest

from annulus_eigen.cli import main
from annulus_eigen.radial import steklov_concentric_mode


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


SMALL_IDENTITIES = {"k_max": 3, "t_max": 4, "energy_n": [3, 4], "energy_x": [0.3, 0.6]}
SMALL_STEKLOV = {"n": [2, 3], "x": [0.0, 0.4]}
SMALL_NEUMANN = {"spaces": ["euclidean:2", "rank1:2:2"], "shells": [[1.0, 2.0]],
                 "ellipse_ratios": [1.0, 1.5]}


def test_verify_identities_default_grid(tmp_path):
    out = tmp_path / "id.csv"
    assert main(["verify-identities", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows and all(r["pass"] == "true" for r in rows)
    names = {r["name"] for r in rows}
    assert {"odd_kernel_identity", "even_kernel_identity", "coefficient_vanishing"} <= names
    vanishing = [r for r in rows if r["name"] == "coefficient_vanishing"]
    assert all(abs(float(r["lhs"])) <= 1e-9 for r in vanishing)


def test_tolerance_is_recorded(tmp_path):
    out = tmp_path / "id.csv"
    cfg = _write(tmp_path / "c.json", SMALL_IDENTITIES)
    assert main(["verify-identities", "--config", cfg, "--tol", "1e-11", "--out", str(out)]) == 0
    rows = _rows(out)
    ident = [r for r in rows if r["name"] == "odd_kernel_identity"]
    assert all(float(r["tolerance"]) <= 1e-11 * float(r["rhs"]) * (1 + 1e-12) for r in ident)


def test_unknown_key_is_config_error(tmp_path):
    cfg = _write(tmp_path / "c.json", {"k_max": 3, "colour": "blue"})
    assert main(["verify-identities", "--config", cfg]) == 2


def test_malformed_json_is_config_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["steklov", "--config", str(bad)]) == 2


def test_precondition_violation_is_config_error(tmp_path):
    cfg = _write(tmp_path / "c.json", {"n": [3], "x": [1.5]})
    assert main(["steklov", "--config", cfg]) == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_steklov_columns_and_concentric_rows(tmp_path):
    out = tmp_path / "st.csv"
    cfg = _write(tmp_path / "c.json", SMALL_STEKLOV)
    assert main(["steklov", "--config", cfg, "--out", str(out)]) == 0
    rows = _rows(out)
    assert list(rows[0]) == ["n", "R1", "R2", "x", "tau1_concentric", "tau1_bound", "tau1_oracle",
                             "pass", "tol"]
    assert [r["n"] for r in rows] == ["2", "2", "3", "3"]
    for r in rows:
        tau0, _ = steklov_concentric_mode(int(r["n"]), 1.0, 2.0, 0)
        assert float(r["tau1_concentric"]) == tau0
        if float(r["x"]) == 0.0:
            value = float(r["tau1_bound"] or r["tau1_oracle"])
            assert value == pytest.approx(tau0, rel=1e-10)


def test_empty_sweep_gives_header_only(tmp_path):
    out = tmp_path / "st.csv"
    cfg = _write(tmp_path / "c.json", {"x": []})
    assert main(["steklov", "--config", cfg, "--out", str(out)]) == 0
    assert out.read_text().strip() == "n,R1,R2,x,tau1_concentric,tau1_bound,tau1_oracle,pass,tol"


def test_json_format(tmp_path):
    out = tmp_path / "st.json"
    cfg = _write(tmp_path / "c.json", {"n": [3], "x": [0.0]})
    assert main(["steklov", "--config", cfg, "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data[0]["tau1_bound"] == pytest.approx(0.5, rel=1e-10)
    assert data[0]["tau1_oracle"] is None


def test_neumann_and_report(tmp_path):
    ne = tmp_path / "ne.csv"
    cfg = _write(tmp_path / "c.json", SMALL_NEUMANN)
    assert main(["neumann", "--config", cfg, "--out", str(ne)]) == 0
    rows = _rows(ne)
    assert [r["space"] for r in rows] == ["euclidean", "rank1-C", "ellipse", "ellipse"]
    assert all(r["certs_pass"] == "true" for r in rows)
    assert float(rows[0]["lambda1_r2"]) == 0.25

    summary_path = tmp_path / "summary.json"
    rcfg = _write(tmp_path / "r.json", {"neumann": str(ne)})
    assert main(["report", "--config", rcfg, "--out", str(summary_path)]) == 0
    summary = json.loads(summary_path.read_text())
    assert summary["neumann_annulus_maximizes_ellipses"] == {"rows": 2, "passed": 2, "all_pass": True}


def test_report_empty_input(tmp_path):
    out = tmp_path / "s.json"
    assert main(["report", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == {}


def test_report_flags_failure(tmp_path):
    bad = tmp_path / "st.csv"
    bad.write_text("n,R1,R2,x,tau1_concentric,tau1_bound,tau1_oracle,pass,tol\n"
                   "3,1,2,0.5,0.5,0.6,,false,1e-08\n")
    rcfg = _write(tmp_path / "r.json", {"steklov": str(bad)})
    assert main(["report", "--config", rcfg, "--out", str(tmp_path / "s.json")]) == 1


def test_output_is_byte_stable(tmp_path):
    cfg = _write(tmp_path / "c.json", SMALL_STEKLOV)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["steklov", "--config", cfg, "--out", str(a)])
    main(["steklov", "--config", cfg, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    cfg = _write(tmp_path / "c.json", {"n": [3], "x": [0.2]})
    proc = subprocess.run([sys.executable, "-m", "annulus_eigen", "steklov", "--config", cfg],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("n,R1,R2,x")


def test_help_documents_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["neumann", "--help"])
    assert "ellipse_ratios" in capsys.readouterr().out
