import json
import subprocess
import sys

import pytest

from qdivisor import cli
from qdivisor.quasimodular import QMExpr
from qdivisor.report import IdentityReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_text(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "1", "--t", "2", "--order", "12", "--route", "all")
    assert code == 0
    assert out.splitlines() == ["3 1", "6 3", "9 4", "12 7", "agreement: ok"]


def test_coeffs_t0(capsys):
    code, out, _ = run(capsys, "coeffs", "--t", "0", "--order", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == [[0, "1"]] and doc["agreement"] == "ok"


def test_coeffs_csv_single_route(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "-2", "--t", "1", "--order", "6", "--route", "cheb", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,coefficient", "1,1", "2,3", "3,4", "4,7", "5,6", "6,12"]


def test_coeffs_bad_a(capsys):
    code, _, err = run(capsys, "coeffs", "--a", "5")
    assert code == 64 and "--a" in err


def test_coeffs_disagreement_exit(capsys, monkeypatch):
    real = cli.route_series

    def broken(route, p):
        s = real(route, p)
        return s + 1 if route == "cheb" else s

    monkeypatch.setattr(cli, "route_series", broken)
    code, out, _ = run(capsys, "coeffs", "--order", "5")
    assert code == 2 and "disagree" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        cli.main(["coeffs", "--format", "xml"])
    assert exc.value.code == 64
    code, _, _ = run(capsys, "coeffs", "--order", "-1")
    assert code == 64


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "thm-1.1", "--order", "200")
    assert code == 0 and "pass" in out
    code, _, err = run(capsys, "verify", "no-such-id")
    assert code == 65


def test_verify_all_json_round_trip(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, _, _ = run(capsys, "verify", "all", "--order", "60", "--format", "json", "--output", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert [d["id"] for d in data] == sorted(d["id"] for d in data)
    for d in data:
        assert set(d) >= {"id", "order_checked", "verdict", "first_mismatch", "elapsed_ms"}
        back = IdentityReport.from_dict(d).to_dict(with_elapsed=False)
        d.pop("elapsed_ms")
        assert back == d


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "u1-0", "--order", "20", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "id,order_checked,verdict,n,lhs,rhs,elapsed_ms"
    assert out.splitlines()[1].startswith("u1-0,20,pass,")


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--order", "300", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert all(d["verdict"] == "pass" for d in data)
    assert all(d["detail"]["coefficients_checked"] > 0 for d in data)
    code, _, _ = run(capsys, "scan", "--order", "5")
    assert code == 0


def test_fit(capsys):
    code, out, _ = run(capsys, "fit", "--target", "U:1:2", "--basis", "E2@3", "--max-weight", "2")
    assert code == 0 and out.strip() == "(1/24) + (-1/24)*E2@3"
    code, out, _ = run(capsys, "fit", "--target", "U:-2:1", "--basis", "E2", "--format", "json")
    assert code == 0
    expr = QMExpr.from_dict(json.loads(out))
    assert str(expr) == "(1/24) + (-1/24)*E2"


def test_fit_errors(capsys):
    code, _, _ = run(capsys, "fit", "--target", "U:-2:4", "--order", "10")
    assert code == 66
    code, _, _ = run(capsys, "fit", "--target", "V:1:2")
    assert code == 64
    code, _, _ = run(capsys, "fit", "--target", "U:0:1", "--basis", "E2,E4", "--max-weight", "4", "--order", "80")
    assert code == 2


def test_fit_de2(capsys):
    code, out, _ = run(capsys, "fit", "--de2", "--tmax", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["constant"] == "-1/12" and set(doc["per_t"]) == {"1", "2", "3"}


def test_list_identities(capsys):
    code, out, _ = run(capsys, "list-identities", "--format", "json")
    assert code == 0
    assert "thm-1.1" in [d["id"] for d in json.loads(out)]


def test_env_default_order(capsys, monkeypatch):
    monkeypatch.setenv("QDIVISOR_DEFAULT_ORDER", "9")
    code, out, _ = run(capsys, "coeffs", "--a", "1", "--t", "2")
    assert out.splitlines()[:3] == ["3 1", "6 3", "9 4"] and len(out.splitlines()) == 4
    monkeypatch.setenv("QDIVISOR_DEFAULT_ORDER", "many")
    code, _, _ = run(capsys, "coeffs")
    assert code == 64


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qdivisor", "verify", "nope"], capture_output=True, text=True
    )
    assert res.returncode == 65
