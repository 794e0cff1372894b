import csv
import io
import json

from arbordyn.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "(x^2-2)*(x-1)^3+5")
    assert code == 0 and "Thm1.5" in out
    code, out, _ = run(capsys, "analyze", "x^2+1", "--json")
    data = json.loads(out)
    assert {e["criterion"]: e["verdict"] for e in data["hypotheses"]}["Cor1.2"] == "Applies"


def test_stability(capsys):
    code, out, _ = run(capsys, "stability", "--f", "x^2+1", "--a", "0", "--p", "3", "--depth", "2")
    assert code == 0 and json.loads(out)["verdict"] == "StableUpTo(2)"
    code, out, _ = run(capsys, "stability", "--f", "1-x^3", "--a", "3", "--p", "7", "--exact-unicritical")
    assert json.loads(out)["status"] == "StableExact"
    code, _, err = run(capsys, "stability", "--f", "x^3+x", "--p", "7", "--exact-unicritical")
    assert code == 2 and "error" in err


def test_witnesses(capsys):
    code, out, _ = run(capsys, "witnesses", "--f", "x^2+1", "--t", "1", "--e", "2", "--nmax", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "p", "valuation", "complete_factorization"]
    assert [r[:3] for r in rows[1:]] == [["1", "2", "1"], ["2", "5", "1"], ["3", "2", "1"], ["3", "13", "1"]]


def test_wreath(capsys):
    code, out, _ = run(capsys, "wreath", "realizable", "--type", "3,3,1x43", "--n", "49")
    data = json.loads(out)
    assert code == 0 and data["realizable"] and data["parity"] == "Pass" and "witness" in data
    code, out, _ = run(capsys, "wreath", "realizable", "--type", "3,1x46", "--n", "49")
    data = json.loads(out)
    assert not data["realizable"] and data["parity"] == "Fail"
    code, out, _ = run(capsys, "wreath", "proportion", "--tower", "agl3,agl3")
    assert json.loads(out)["proportion"] == "1/9"
    code, _, _ = run(capsys, "wreath", "realizable", "--type", "3,1", "--n", "5")
    assert code == 2


def test_dickson(capsys):
    code, out, _ = run(capsys, "dickson", "--c", "7", "--count", "3")
    data = json.loads(out)
    assert data["representation"] == {"alpha": 2, "beta": 1} and data["f"] == "x^3 - 21*x"
    code, _, _ = run(capsys, "dickson", "--c", "2")
    assert code == 2


def test_census_exit_codes(capsys, tmp_path):
    out_json = tmp_path / "r.json"
    out_csv = tmp_path / "r.csv"
    code, _, err = run(capsys, "census", "--f", "x^2-2", "--a", "0", "--pmax", "5000", "--exact-unicritical",
                       "--expect", "1/2", "--tol", "0.02", "--out", str(out_json), "--csv", str(out_csv))
    assert code == 0 and "Pass" in err
    assert json.loads(out_json.read_text())["verdict"] == "Pass"
    assert out_csv.read_text().splitlines()[0] == "prime,verdict,fail_level,orbit_period"
    code, _, _ = run(capsys, "census", "--f", "x^2-2", "--pmax", "5000", "--exact-unicritical", "--expect", "1/3")
    assert code == 1
    code, _, _ = run(capsys, "census", "--f", "x^2-2", "--pmax", "5000")
    assert code == 2
    code, _, _ = run(capsys, "census", "--f", "x^2-2", "--pmax", "1000000000", "--depth", "2")
    assert code == 2
    code, _, _ = run(capsys, "nonsense")
    assert code == 2


def test_census_batch(capsys, tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps([{"f": "x^2-2", "pmax": 3000, "mode": "exact", "expect": "1/2", "tol": "0.03"}]))
    code, out, _ = run(capsys, "census", "--batch", str(path))
    assert code == 0 and json.loads(out)[0]["verdict"] == "Pass"
