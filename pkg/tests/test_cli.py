import io
import subprocess
import sys

import pytest

from cycledom.cli import TABLE_HEADER, main
from cycledom.core import read_set


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestCompute:
    def test_theorem2(self):
        code, text = run("compute", "5", "3")
        assert code == 0
        assert "exact 6 (theorem2-case-i)" in text

    def test_c4(self):
        code, text = run("compute", "4", "8")
        assert code == 0
        # (4, 8) also matches Theorem 2 through the swap, which wins the tag
        assert "exact 12 (theorem2-case-ii)" in text
        code, text = run("compute", "4", "4")
        assert "exact 7 (theorem4-c4)" in text

    def test_interval(self):
        code, text = run("compute", "17", "7", "--budget-bits", "4")
        assert code == 2
        assert "interval [43, 63] (strict-lb-case-iii)" in text

    def test_11_4(self):
        code, text = run("compute", "11", "4", "--budget-bits", "4")
        assert code == 0
        assert "exact 17 (theorem4-c4)" in text
        assert "lower 17" in text

    def test_invalid(self, capsys):
        code, _ = run("compute", "1", "3")
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_bad_args(self):
        assert run("compute", "x")[0] == 1

    def test_certificate(self, tmp_path):
        path = tmp_path / "c.txt"
        code, _ = run("compute", "5", "3", "--certificate", str(path))
        assert code == 0
        assert len(read_set(path.read_text())) == 6
        code, text = run("verify", str(path))
        assert code == 0 and "dominating, size 6" in text


class TestVerify:
    def test_broken_column(self, tmp_path):
        path = tmp_path / "c.txt"
        run("compute", "5", "3", "--certificate", str(path))
        lines = path.read_text().splitlines()
        lines[4] = "col 1:"
        path.write_text("\n".join(lines) + "\n")
        code, text = run("verify", str(path))
        assert code == 3
        assert "undominated vertex (" in text

    def test_malformed(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("# domset v9\nm 5\nn 3\n")
        assert run("verify", str(path))[0] == 1
        assert "line 1" in capsys.readouterr().err

    def test_missing(self, tmp_path):
        assert run("verify", str(tmp_path / "nope.txt"))[0] == 1


class TestConstruct:
    def test_emits_certificate(self, tmp_path):
        code, text = run("construct", "8", "6")
        assert code == 0
        W = read_set(text)
        assert len(W) == 18

    def test_word(self):
        code, text = run("construct", "5", "3", "--word", "1,-2")
        assert code == 0
        assert [c.members() for c in read_set(text).columns] == [[0, 2], [1, 3], [1, 4]]

    def test_bad_word(self):
        code, text = run("construct", "8", "4", "--word", "1,1,1")
        assert code == 3

    def test_unavailable(self):
        assert run("construct", "6", "4")[0] == 1

    def test_output_file(self, tmp_path):
        path = tmp_path / "s.txt"
        assert run("construct", "7", "5", "-o", str(path))[0] == 0
        assert run("verify", str(path))[0] == 0


class TestBounds:
    def test_output(self):
        code, text = run("bounds", "12", "7")
        assert code == 0
        assert "case open-a" in text and "known none" in text


class TestTable:
    def test_small(self):
        code, text = run("table", "--m-range", "2..4", "--n-range", "2..3")
        rows = text.strip().split("\n")
        assert rows[0] == ",".join(TABLE_HEADER)
        assert len(rows) == 7
        assert all(r.split(",")[7] != "" for r in rows[1:])

    def test_known_rows(self):
        _, text = run("table", "--m-range", "5..12", "--n-range", "3..7", "--budget-bits", "4")
        rows = {tuple(r.split(",")[:2]): r.split(",") for r in text.strip().split("\n")[1:]}
        assert rows[("5", "3")][7:9] == ["6", "theorem2-case-i"]
        assert rows[("12", "7")][4] == "open-a"
        assert rows[("12", "7")][7] == ""

    def test_jobs_same_output(self):
        a = run("table", "--m-range", "2..6", "--n-range", "2..6")[1]
        b = run("table", "--m-range", "2..6", "--n-range", "2..6", "--jobs", "4")[1]
        assert a == b

    def test_timing(self):
        _, text = run("table", "--m-range", "3..3", "--n-range", "3..3", "--timing")
        assert text.strip().split("\n")[1].split(",")[-1] != ""

    @pytest.mark.parametrize("rng", ["1..3", "4..2", "a..b"])
    def test_bad_range(self, rng):
        assert run("table", "--m-range", rng, "--n-range", "2..3")[0] == 1


class TestConjecture:
    def test_report(self):
        code, text = run("conjecture", "--k-max", "8")
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "k=2 m=6 n=4 conjectured=10 actual=10 dp=10 agree"
        assert lines[1] == "k=3 m=9 n=4 conjectured=15 actual=14 dp=14 COUNTEREXAMPLE"
        assert lines[6] == "k=8 m=24 n=4 conjectured=40 actual=36 dp=36 COUNTEREXAMPLE"
        assert lines[-1] == "first counterexample: k=3 (conjectured 15, actual 14)"

    def test_without_dp(self):
        code, text = run("conjecture", "--k-max", "3", "--no-dp")
        assert "dp=-" in text

    def test_k_max_too_small(self):
        assert run("conjecture", "--k-max", "1")[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cycledom", "compute", "5", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "exact 6" in proc.stdout
