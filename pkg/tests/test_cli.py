import json
import subprocess
import sys

import pytest

from klh.cli import main
from klh.records import read_scan


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestH:
    def test_3412(self, capsys):
        rec = js(capsys, "h", "--type", "A", "--rank", "3", "--w", "3412",
                 "--method", "all")
        assert rec["h_kl"] == rec["h_be"] == rec["h_formula"] == 1
        assert rec["h"] == {"kl": 1, "be": 1, "formula": 1}
        assert rec["smooth"] is False
        assert rec["P"] == [1, 1] and rec["L"] == [1, 3, 5, 4, 1] and rec["ell"] == 4
        assert rec["patterns"]["mh"] == 1 and rec["patterns"]["mcontent"] == 1

    def test_extremal(self, capsys):
        rec = js(capsys, "h", "--type", "A", "--rank", "5", "--w", "564312")
        assert set(rec["h"].values()) == {3}

    def test_identity(self, capsys):
        rec = js(capsys, "h", "--type", "A", "--rank", "3", "--w", "1234")
        assert rec["h_kl"] == "inf" and rec["smooth"] is True
        assert rec["smooth_by"] == {"patterns": True, "kl": True}

    def test_type_d(self, capsys):
        rec = js(capsys, "h", "--type", "D", "--rank", "4", "--w=2,-4,-3,1")
        assert rec["h"]["kl"] == rec["h"]["be"] == 1
        assert rec["h"]["bound"] == 2  # mg - 1
        assert rec["patterns"]["mg"] == 3

    def test_formula_in_type_d_is_usage_error(self, capsys):
        code, _, err = run(capsys, "h", "--type", "D", "--rank", "4",
                           "--w", "1,2,3,4", "--method", "formula")
        assert code == 2 and "type A" in err

    @pytest.mark.parametrize("w", ["3,4,1", "1,1,2,3", "x"])
    def test_parse_failure(self, capsys, w):
        code, _, err = run(capsys, "h", "--type", "A", "--rank", "3", "--w", w)
        assert code == 2 and err.startswith("error:")

    def test_odd_signs_rejected(self, capsys):
        code, _, _ = run(capsys, "h", "--type", "D", "--rank", "3", "--w=-1,2,3")
        assert code == 2

    def test_size_refusal(self, capsys):
        code, _, err = run(capsys, "h", "--type", "A", "--rank", "9",
                           "--w", "1,2,3,4,5,6,7,8,9,10", "--method", "kl")
        assert code == 2 and "limit" in err


class TestKL:
    def test_3412(self, capsys):
        rec = js(capsys, "kl", "--type", "A", "--rank", "3", "--y", "e", "--w", "3412")
        assert rec["P"] == [1, 1] and rec["R"] == [1, -3, 4, -3, 1]

    def test_diagonal(self, capsys):
        rec = js(capsys, "kl", "--type", "A", "--rank", "3", "--y", "3412", "--w", "3412")
        assert rec["P"] == [1] and rec["R"] == [1]

    def test_incomparable(self, capsys):
        rec = js(capsys, "kl", "--type", "A", "--rank", "3", "--y", "s1", "--w", "e")
        assert rec["P"] == [] and rec["R"] == [] and rec["leq"] is False


def test_poincare_parabolic(capsys):
    rec = js(capsys, "poincare", "--type", "A", "--rank", "5", "--w", "564312",
             "--parabolic", "2,3,4")
    assert rec["L^J(w^J)"] == [1, 2, 3, 4, 5, 3, 2, 1]
    assert rec["bp"] is True and rec["h_be"] == 3


def test_patterns(capsys):
    rec = js(capsys, "patterns", "--type", "A", "--rank", "4", "--w", "45312")
    assert rec["occurrences"]["3412"] == [{"positions": [1, 2, 4, 5],
                                           "values": [4, 5, 1, 2]}]
    assert rec["patterns"]["mh"] == 2


class TestVerify:
    def test_formula_a3(self, capsys):
        rep = js(capsys, "verify", "--type", "A", "--rank", "3", "--suite", "formula-a")
        assert rep["checked"] == 24 and rep["failures"] == []
        assert rep["max_h_singular"] == 1

    def test_formula_a5(self, capsys):
        rep = js(capsys, "verify", "--type", "A", "--rank", "5", "--suite", "formula-a")
        assert rep["checked"] == 720 and rep["failures"] == []
        assert rep["max_h_singular"] == 3

    def test_smoothness_d4(self, capsys):
        rep = js(capsys, "verify", "--type", "D", "--rank", "4", "--suite", "smoothness")
        assert rep["checked"] == 192 and rep["failures"] == []

    def test_all_a4(self, capsys):
        rep = js(capsys, "verify", "--type", "A", "--rank", "4")
        assert rep["checked"] == 120 and rep["failures"] == []

    def test_rank_cap(self, capsys):
        code, _, err = run(capsys, "verify", "--type", "A", "--rank", "6")
        assert code == 2 and "--slow" in err
        code, _, _ = run(capsys, "verify", "--type", "D", "--rank", "5")
        assert code == 2

    def test_wrong_suite_for_type(self, capsys):
        code, _, _ = run(capsys, "verify", "--type", "D", "--rank", "4",
                         "--suite", "formula-a")
        assert code == 2

    def test_failure_exit_status(self, capsys, monkeypatch):
        from klh import verify

        def broken(sw, k, w):
            if k == 0:
                yield "forced", 1, 2
        monkeypatch.setitem(verify.SUITES, "smoothness", [("forced", broken)])
        code, out, _ = run(capsys, "verify", "--type", "A", "--rank", "3",
                           "--suite", "smoothness")
        assert code == 1
        rep = json.loads(out)
        assert rep["failures"] == [{"element": [1, 2, 3, 4], "check": "forced",
                                    "expected": 1, "actual": 2}]

    def test_timing_flag(self, capsys):
        rep = js(capsys, "verify", "--type", "A", "--rank", "2", "--timing")
        assert "elapsed" in rep


class TestScan:
    def test_a3_json(self, capsys, tmp_path):
        out = tmp_path / "a3.json"
        code, _, _ = run(capsys, "scan", "--type", "A", "--rank", "3", "--out", str(out))
        assert code == 0
        rows = read_scan(out)
        assert len(rows) == 24
        (row,) = [r for r in rows if r["w"] == [4, 2, 3, 1]]
        assert row["P"] == [1, 1] and row["h_kl"] == 1 and row["contains_4231"] is True
        ells = [r["ell"] for r in rows]
        assert ells == sorted(ells)

    def test_d4_csv_round_trip(self, capsys, tmp_path):
        a, b = tmp_path / "d4.csv", tmp_path / "d4.json"
        assert run(capsys, "scan", "--type", "D", "--rank", "4", "--format", "csv",
                   "--out", str(a))[0] == 0
        assert run(capsys, "scan", "--type", "D", "--rank", "4", "--out", str(b))[0] == 0
        rows = read_scan(a)
        assert len(rows) == 192
        assert rows == read_scan(b)

    def test_order_is_length_then_lex(self, capsys, tmp_path):
        out = tmp_path / "a2.json"
        run(capsys, "scan", "--type", "A", "--rank", "2", "--out", str(out))
        keys = [(r["ell"], r["w"]) for r in read_scan(out)]
        assert keys == sorted(keys)


def test_cache_commands(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("KLH_CACHE_DIR", str(tmp_path))
    rec = js(capsys, "cache", "build", "--type", "A", "--rank", "3")
    assert rec["entries"] == 213
    info = js(capsys, "cache", "info", "--type", "A", "--rank", "3")
    assert info["valid"] and info["columns"] == 24
    cleared = js(capsys, "cache", "clear", "--type", "A", "--rank", "3")
    assert cleared["removed"] is True
    code, _, _ = run(capsys, "cache", "info", "--type", "A", "--rank", "3")
    assert code == 2


def test_cache_without_location(capsys, monkeypatch):
    monkeypatch.delenv("KLH_CACHE_DIR", raising=False)
    code, _, err = run(capsys, "cache", "build", "--type", "A", "--rank", "2")
    assert code == 2 and "KLH_CACHE_DIR" in err


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "h", "--type", "B", "--rank", "3", "--w", "1")[0] == 2
    assert run(capsys, "--help")[0] == 0


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "klh.cli", *argv],
                          capture_output=True, text=True, env=env)


def test_byte_identical_output():
    args = ("verify", "--type", "D", "--rank", "4", "--suite", "smoothness")
    a, b = _cli(*args), _cli(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    a, b = _cli("scan", "--type", "A", "--rank", "3", "--format", "csv"), \
        _cli("scan", "--type", "A", "--rank", "3", "--format", "csv")
    assert a.stdout == b.stdout and a.stdout.count("\n") == 25
