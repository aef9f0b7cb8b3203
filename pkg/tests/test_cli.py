import io
import json
import subprocess
import sys

import pytest

from hearweights.cli import main, parse_rational


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_forward_reports_exact_invariants(capsys):
    code, out, _ = run(capsys, "forward", "1", "2", "3", "--vol", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["weights"] == [1, 2, 3]
    assert doc["T"]["rational"] == "91/864"
    assert [h["a2_exact"] for h in doc["heat"]] == ["89/288", "31/72"]
    assert doc["chern"] == {"b": "6/1", "c": "11/6", "d": "7/3"}
    assert doc["tau_sq"] == {"pi2_coefficient": "224/1", "route": "closed_form"}


def test_forward_then_recover_round_trip(capsys, monkeypatch):
    for weights, vol in [(("3", "1", "2"), "1"), (("5", "7", "11"), "2"), (("1", "1", "1"), "1/2")]:
        code, out, _ = run(capsys, "forward", *weights, "--vol", vol)
        assert code == 0
        code, out, _ = run(capsys, "recover", stdin=out, monkeypatch=monkeypatch)
        assert code == 0
        assert json.loads(out)["weights"] == sorted(int(n) for n in weights)


def test_recover_from_positional_values(capsys):
    code, out, _ = run(capsys, "forward", "2", "3", "5")
    heat = json.loads(out)["heat"]
    code, out, _ = run(capsys, "recover", heat[0]["a0"], heat[0]["a1"], heat[0]["a2"],
                       heat[1]["a2"], "--output", "text")
    assert code == 0
    assert "weights: [2, 3, 5]" in out


def test_corrupted_spectrum_exits_inconsistent(capsys, monkeypatch):
    code, out, _ = run(capsys, "forward", "1", "2", "3")
    heat = json.loads(out)["heat"]
    flat = {"a0": heat[0]["a0"], "a1": heat[0]["a1"], "a2_0": heat[0]["a2"],
            "a2_1": str(float(heat[1]["a2"]) + 0.5)}
    code, _, err = run(capsys, "recover", stdin=json.dumps(flat), monkeypatch=monkeypatch)
    assert code == 3
    assert "inconsistent" in err


def test_recover_usage_errors(capsys, monkeypatch):
    assert run(capsys, "recover", "1", "2")[0] == 2
    assert run(capsys, "recover", stdin="not json", monkeypatch=monkeypatch)[0] == 2
    assert run(capsys, "recover", stdin='{"a0": "1"}', monkeypatch=monkeypatch)[0] == 2


def test_non_coprime_weights_are_rejected(capsys):
    code, _, err = run(capsys, "forward", "2", "4", "5")
    assert code == 2
    assert "pairwise coprime" in err


def test_recover_prime(capsys):
    code, out, _ = run(capsys, "recover-prime", "529/385")
    assert code == 0 and json.loads(out)["weights"] == [5, 7, 11]
    assert run(capsys, "recover-prime", "6")[0] == 3


def test_recover_chi_accepts_decimals(capsys):
    code, out, _ = run(capsys, "recover-chi", "6", "1.8333333")
    assert code == 0
    assert json.loads(out)["weights"] == [1, 2, 3]
    assert run(capsys, "recover-chi", "529/385", "192/385")[0] == 3


def test_extremal_check(capsys):
    code, out, _ = run(capsys, "extremal-check", "1", "2", "3", "89/288", "--T", "91/864")
    assert code == 0 and json.loads(out)["extremal"] is True
    code, out, _ = run(capsys, "extremal-check", "1", "2", "3", "0.3190")
    assert code == 0 and json.loads(out)["extremal"] is False
    code, out, _ = run(capsys, "--rel-tol", "1e-2", "extremal-check", "1", "2", "3", "0.3100")
    assert json.loads(out)["extremal"] is True


def test_global_flags_before_or_after(capsys):
    a = run(capsys, "--precision", "192", "forward", "1", "2", "3")[1]
    b = run(capsys, "forward", "1", "2", "3", "--precision", "192")[1]
    assert a == b and json.loads(a)["precision"] == 192


def test_bad_precision_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--precision", "16", "forward", "1", "2", "3"])
    assert exc.value.code == 2


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--bound", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["failures"] == 0 and doc["triples"] > 0


def test_parse_rational():
    assert str(parse_rational("1.8333333", 10**8, 128)) == "11/6"
    assert str(parse_rational("91/864", 10**8, 128)) == "91/864"
    assert str(parse_rational("2.5e1", 10**8, 128)) == "25"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hearweights", "recover-chi", "9", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["degenerate"] is True
