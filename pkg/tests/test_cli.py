import json
import subprocess
import sys

import pytest

from hamtri.census import read_planar_code
from hamtri.cli import main, parse_filter


def run(args):
    return main([str(a) for a in args])


def test_generate_and_convert(tmp_path):
    pc = tmp_path / "t.pc"
    assert run(["generate", "--nmax", 8, "--out", pc]) == 0
    assert len(list(read_planar_code(pc.read_bytes()))) == 23
    txt = tmp_path / "t.txt"
    assert run(["convert", pc, "--to", "ascii", "--out", txt]) == 0
    back = tmp_path / "back.pc"
    assert run(["convert", txt, "--to", "planar_code", "--out", back]) == 0
    assert back.read_bytes() == pc.read_bytes()


def test_generate_with_filter_and_limit(tmp_path):
    pc = tmp_path / "f.pc"
    assert run(["generate", "--nmax", 10, "--filter", "4-connected", "--out", pc]) == 0
    assert len(list(read_planar_code(pc.read_bytes()))) == 1 + 1 + 2 + 4 + 10
    assert run(["generate", "--nmax", 10, "--limit", 3, "--out", pc]) == 0
    assert len(list(read_planar_code(pc.read_bytes()))) == 3


def test_check_conjecture_writes_ledger(tmp_path):
    out = tmp_path / "l.jsonl"
    assert run(["check-conjecture", "--nmax", 9, "--out", out]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    graphs = [r for r in rows if r["kind"] == "graph"]
    assert len(graphs) == 8
    assert all(r["hc_count"] >= r["bound"] for r in graphs)
    assert rows[-1]["violations"] == 0


def test_census_with_suite(tmp_path):
    out = tmp_path / "c.jsonl"
    assert run(["census", "--nmax", 8, "--suite", "cofacial", "--out", out]) == 0
    summary = json.loads(out.read_text().splitlines()[-1])
    assert summary["suites"]["cofacial"]["violations"] == 0


def test_lemma_suite(tmp_path):
    out = tmp_path / "s.jsonl"
    assert run(["lemma-suite", "link-size", "--nmax", 9, "--out", out]) == 0


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["frobnicate"],
        ["lemma-suite", "no-such-suite"],
        ["generate", "--filter", "sparkly"],
        ["generate", "--filter", "min-degree=x"],
        ["generate", "--nmax", 300],
        ["generate", "--jobs", 0],
        ["convert", "/nonexistent/file"],
    ],
)
def test_usage_errors_exit_2(args):
    assert run(args) == 2


def test_corrupt_input_exits_2(tmp_path):
    bad = tmp_path / "bad.pc"
    bad.write_bytes(b"\x04\x02\x03")
    assert run(["convert", bad, "--from", "planar_code"]) == 2


def test_violation_exit_code(monkeypatch, tmp_path):
    from hamtri import cli
    from hamtri.suites import SuiteResult

    def broken(name, **kwargs):
        res = SuiteResult(name, checked=1)
        res.fail("x", reason="synthetic")
        return res

    monkeypatch.setattr(cli, "run_suite", broken)
    assert run(["lemma-suite", "cofacial", "--out", tmp_path / "v.jsonl"]) == 1


def test_parse_filter_terms():
    b = parse_filter("4-connected,min-degree=4,degree4-distance=3", 10)
    assert (b.connectivity, b.min_degree, b.degree4_distance) == (4, 4, 3)
    assert parse_filter(None, 9) == parse_filter("all", 9)
    assert parse_filter("all", 9).connectivity is None
    assert parse_filter("no-separating-triangle", 9).no_separating_triangle


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hamtri.cli", "generate", "--nmax", "5", "--format", "ascii"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["4 bcd,adc,abd,acb", "5 bcd,adec,abed,aceb,bdc"]
