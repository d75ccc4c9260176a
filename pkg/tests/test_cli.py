import io
import subprocess
import sys

import numpy as np
import pytest

from gen import RUNNING
from segsum.cli import parse_scale, read_values, run
from segsum.index import RMaxSSQIndex, build_index


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def running(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("\n".join(map(str, RUNNING)) + "\n")
    return f


def test_build_and_query(tmp_path, running):
    idx = tmp_path / "a.idx"
    assert call("build", "--input", str(running), "--out", str(idx))[0] == 0
    code, out = call("query", "--index", str(idx), "--range", "1:5", "--range", "4:4")
    assert code == 0 and out.splitlines() == ["1 3", "empty"]
    rf = tmp_path / "r.txt"
    rf.write_text("2:5\n1 1\n")
    assert call("query", "--index", str(idx), "--ranges-file", str(rf))[1].splitlines() == ["5 5", "1 1"]
    assert RMaxSSQIndex.deserialize(idx.read_bytes()) == build_index(RUNNING)


def test_nonempty_query(tmp_path):
    f = tmp_path / "n.txt"
    f.write_text("-5\n-1\n-1\n")
    idx = tmp_path / "n.idx"
    assert call("build", "--input", str(f), "--with-nonempty", "--out", str(idx))[0] == 0
    assert call("query", "--index", str(idx), "--range", "1:3", "--nonempty")[1].strip() == "3 3"


def test_kcover(running):
    code, out = call("kcover", "--input", str(running), "--k", "2")
    assert code == 0 and out.splitlines() == ["score=8", "1 3", "5 5"]
    lines = call("kcover", "--input", str(running), "--all-k")[1].splitlines()
    assert lines == ["k=1 score=5 1:3", "k=2 score=8 1:3 5:5", "k=3 score=9 1:1 3:3 5:5"]


def test_count_trees():
    assert call("count-trees", "--n", "4")[1].strip() == "T(4)=10 M(4)=5"
    out = call("count-trees", "--n", "100", "--growth")[1].splitlines()
    assert out[1].startswith("growth=1.8")


def test_bench_schema():
    code, out = call("bench", "--n", "5000", "--seed", "1", "--queries", "1000")
    assert code == 0
    keys = [kv.split("=")[0] for kv in out.split()]
    assert keys == ["n", "bits_per_element", "build_ns_per_element", "query_ns"]


def test_selftest():
    assert call("selftest", "--cases", "20") == (0, "selftest: 20 cases ok\n")


def test_selftest_failure_exit(monkeypatch):
    import segsum.cli as cli

    monkeypatch.setattr(cli, "selftest", lambda cases, seed: ["case 0: forced"])
    assert call("selftest", "--cases", "1")[0] == 4


def test_formats_and_scale(tmp_path):
    b = tmp_path / "v.bin"
    np.array(RUNNING, "<i8").tofile(b)
    assert read_values(b, "bin").tolist() == RUNNING
    d = tmp_path / "d.txt"
    d.write_text("1.25\n-0.5\n\n3\n")
    assert read_values(d, "text", 100).tolist() == [125, -50, 300]
    assert call("kcover", "--input", str(d), "--scale", "10^2", "--k", "1")[1].splitlines()[0] == "score=375"
    assert parse_scale("1e3") == parse_scale("10^3") == parse_scale("1000") == 1000


def test_exit_codes(tmp_path, running):
    assert call()[0] == 1
    assert call("nope")[0] == 1
    assert call("kcover", "--input", str(running))[0] == 1  # missing --k
    assert call("kcover", "--input", str(running), "--k", "0")[0] == 1
    assert call("build", "--input", str(running), "--scale", "7", "--out", str(tmp_path / "x"))[0] == 1
    assert call("build", "--input", str(tmp_path / "missing"), "--out", str(tmp_path / "x"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1\nabc\n")
    assert call("build", "--input", str(bad), "--out", str(tmp_path / "x"))[0] == 2
    frac = tmp_path / "f.txt"
    frac.write_text("1.5\n")
    assert call("build", "--input", str(frac), "--out", str(tmp_path / "x"))[0] == 2
    odd = tmp_path / "odd.bin"
    odd.write_bytes(b"\0" * 9)
    assert call("build", "--input", str(odd), "--format", "bin", "--out", str(tmp_path / "x"))[0] == 2
    empty = tmp_path / "e.txt"
    empty.write_text("")
    assert call("build", "--input", str(empty), "--out", str(tmp_path / "x"))[0] == 2
    big = tmp_path / "big.txt"
    big.write_text(f"{2 ** 62}\n{2 ** 62}\n")
    assert call("build", "--input", str(big), "--out", str(tmp_path / "x"))[0] == 3
    huge = tmp_path / "huge.txt"
    huge.write_text(f"{2 ** 64}\n")
    assert call("build", "--input", str(huge), "--out", str(tmp_path / "x"))[0] == 3
    junk = tmp_path / "junk.idx"
    junk.write_bytes(b"not an index at all, really")
    assert call("query", "--index", str(junk), "--range", "1:1")[0] == 2
    idx = tmp_path / "a.idx"
    call("build", "--input", str(running), "--out", str(idx))
    assert call("query", "--index", str(idx), "--range", "0:9")[0] == 1
    assert call("query", "--index", str(idx), "--range", "x")[0] == 1
    assert call("query", "--index", str(idx))[0] == 1


def test_entry_point(running):
    res = subprocess.run([sys.executable, "-m", "segsum.cli", "kcover", "--input", str(running), "--k", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines() == ["score=5", "1 3"]
