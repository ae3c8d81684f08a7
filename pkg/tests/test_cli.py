from __future__ import annotations

import os
import subprocess
import sys

import pytest

from gf4graphs import classify as K
from gf4graphs.cli import run

DATA = os.path.join(os.path.dirname(__file__), "data")
EXAMPLE = os.path.join(DATA, "example1.gf4")
C13 = os.path.join(DATA, "c13_1.gf4")
FIG_GAMMA = ["0001011", "0010101", "1001100", "1010010", "0111000", "1100001", "0100110"]


def out_of(capsys, argv):
    rc = run(argv)
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_convert(capsys):
    rc, out, _ = out_of(capsys, ["convert", "--in", EXAMPLE])
    lines = out.splitlines()
    assert rc == 0
    assert lines[:7] == FIG_GAMMA
    assert lines[7] == "swaps {6,7}"


def test_convert_exceptional(tmp_path, capsys):
    p = tmp_path / "x.gf4"
    p.write_text("n=2 k=2\n10\nw0\n")
    rc, out, err = out_of(capsys, ["convert", "--in", str(p)])
    assert rc == 1 and out == ""
    assert "zero column pair at coordinate 2" in err


def test_mindist(capsys):
    assert out_of(capsys, ["mindist", "--in", C13])[:2] == (0, "6\n")
    assert out_of(capsys, ["mindist", "--in", C13, "--limit", "5"])[:2] == (0, ">5\n")
    assert out_of(capsys, ["mindist", "--in", EXAMPLE])[:2] == (0, "4\n")
    rc, _, err = out_of(capsys, ["mindist", "--in", EXAMPLE, "--budget", "8"])
    assert rc == 1 and "budget" in err


def test_wenum_dual_equiv_aut(tmp_path, capsys):
    rc, out, err = out_of(capsys, ["--human", "wenum", "--in", EXAMPLE])
    assert rc == 0 and out.splitlines()[5] == "4,35" and "35y^4" in err
    d = tmp_path / "dual.gf4"
    assert out_of(capsys, ["dual", "--in", EXAMPLE, "--out", str(d)])[0] == 0
    assert d.read_text().startswith("n=7 k=7\n")
    # the worked example code is isodual
    assert out_of(capsys, ["equiv", "--in", EXAMPLE, str(d)])[1] == "equivalent\n"
    assert out_of(capsys, ["equiv", "--in", EXAMPLE, C13])[1] == "inequivalent\n"
    assert out_of(capsys, ["aut", "--in", C13])[1] == "13\n"


def test_euler(capsys):
    assert out_of(capsys, ["euler", "--i", "1,0,0"])[:2] == (0, "1,1,1\n")
    import oracles

    expect = ",".join(map(str, oracles.euler_by_partitions([1, 2, 7, 49])))
    assert out_of(capsys, ["euler", "--i", "1,2,7,49"])[1] == expect + "\n"
    rc, _, err = out_of(capsys, ["euler", "--i", "a,b"])
    assert rc == 2 and "--i" in err


def test_classify_and_report(tmp_path, capsys):
    db = tmp_path / "db4.tsv"
    rc, out, _ = out_of(capsys, ["classify", "--n", "4", "--out", str(db)])
    assert rc == 0 and out == "4,49\n"
    db2 = tmp_path / "db4b.tsv"
    corpus = os.path.join(DATA, "connected_digraphs_n1-5.d6")
    assert out_of(capsys, ["classify", "--n", "4", "--in", corpus, "--out", str(db2)])[0] == 0
    # different input labelings pick different representatives; the classes agree
    key = lambda path: [(r.certificate, r.d, r.flags) for r in K.read_database(str(path))]
    assert key(db) == key(db2)
    rc, out, err = out_of(capsys, ["--human", "report", "--db", str(db), "--filter", "isodual"])
    assert rc == 0 and out.splitlines()[-1] == "isodual,4,total,19" and "Total" in err


def test_classify_resume(tmp_path, capsys, monkeypatch):
    import gf4graphs.cli as cli

    monkeypatch.setattr(cli, "CENSUS_CHUNK", 50)
    db, ck = tmp_path / "db.tsv", tmp_path / "ck.json"
    assert out_of(capsys, ["classify", "--n", "4", "--out", str(db), "--resume", str(ck)])[0] == 0
    ref = tmp_path / "ref.tsv"
    out_of(capsys, ["classify", "--n", "4", "--out", str(ref)])
    assert db.read_bytes() == ref.read_bytes()
    # resuming a finished checkpoint is a no-op that rewrites the same database
    assert out_of(capsys, ["classify", "--n", "4", "--out", str(db), "--resume", str(ck)])[0] == 0
    assert db.read_bytes() == ref.read_bytes()


def test_long_gates(tmp_path, capsys):
    rc, _, err = out_of(capsys, ["classify", "--n", "6", "--out", str(tmp_path / "x")])
    assert rc == 2 and "--long" in err
    rc, _, err = out_of(capsys, ["search", "--n", "15"])
    assert rc == 2 and "--long" in err
    assert not os.path.exists(tmp_path / "x")


def test_search(tmp_path, capsys):
    csv_path, codes = tmp_path / "s.csv", tmp_path / "s.gf4"
    rc, out, _ = out_of(capsys, ["search", "--n", "8", "--out", str(csv_path), "--codes", str(codes)])
    assert rc == 0 and out.splitlines()[1] == "8,4,11,1,1"
    assert len(csv_path.read_text().splitlines()) == 12
    blocks = codes.read_text().split("\n\n")
    from gf4graphs.code import parse_code_text

    assert len(blocks) == 11 and all(parse_code_text(b).n == 8 for b in blocks)
    rc, out, err = out_of(capsys, ["search", "--n", "8", "--seed-budget", "10", "--resume", str(tmp_path / "c.json")])
    assert out.splitlines()[1].endswith(",0") and "partial" in err


def test_qr(capsys):
    assert out_of(capsys, ["qr", "--p", "13", "--bordered", "--params"])[1] == "n,k,d,self_dual\n14,14,6,1\n"
    rc, out, _ = out_of(capsys, ["qr", "--p", "5"])
    assert out.splitlines()[:2] == ["n=5 k=5", "w1001"]
    assert out_of(capsys, ["qr", "--p", "9"])[0] == 1


def test_usage_errors(capsys, tmp_path):
    assert out_of(capsys, [])[0] == 2
    assert out_of(capsys, ["bogus"])[0] == 2
    assert out_of(capsys, ["mindist"])[0] == 2
    rc, _, err = out_of(capsys, ["mindist", "--in", str(tmp_path / "missing.gf4")])
    assert rc == 2 and "--in" in err
    rc, _, err = out_of(capsys, ["dual", "--in", EXAMPLE, "--out", str(tmp_path / "no" / "x")])
    assert rc == 2 and "--out" in err
    assert out_of(capsys, ["report", "--db", str(tmp_path / "none.tsv")])[0] == 2
    assert out_of(capsys, ["classify", "--n", "3", "--out", str(tmp_path / "d"), "--workers", "0"])[0] == 2


def test_malformed_input_is_domain_error(tmp_path, capsys):
    p = tmp_path / "bad.gf4"
    p.write_text("n=3 k=2\n10x\n000\n")
    assert out_of(capsys, ["wenum", "--in", str(p)])[0] == 1
    d6 = tmp_path / "bad.d6"
    d6.write_text("&A~\n")
    assert out_of(capsys, ["classify", "--n", "2", "--in", str(d6), "--out", str(tmp_path / "db")])[0] == 1
    assert not os.path.exists(tmp_path / "db")


def test_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    out_of(capsys, ["classify", "--n", "3", "--out", str(a)])
    out_of(capsys, ["classify", "--n", "3", "--out", str(b), "--workers", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gf4graphs", "euler", "--i", "1,1,0"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1,2,2\n"
    r = subprocess.run([sys.executable, "-m", "gf4graphs", "euler"], capture_output=True, text=True)
    assert r.returncode == 2
