import csv
import io
import json
import subprocess
import sys

import pytest

from thinset.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def doc(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_classify_a_frak():
    d = doc("classify", "--set", "union(pow(2),pow2plus1)", "--horizon", "1048576", "--all")
    assert d["command"][:2] == ["thinset", "classify"] and d["version"]
    status = {r["class"]: r["status"] for r in d["records"]}
    assert status["VeryThin"] == "ProvedSymbolic"
    assert status["SuperThin"] == "RefutedSymbolic"
    assert len(status) == 6


def test_classify_single_class_and_gallery():
    d = doc("classify", "--gallery", "pow2run", "--horizon", "2^16", "--class", "VeryThin")
    (r,) = d["records"]
    assert r["status"] == "InconsistentUpTo" and r["horizon"] == 65536


def test_converge():
    code, out, _ = call("--format", "csv", "converge", "--seq", "paper_x", "--limit", "1",
                        "--eps", "1/2", "--horizon", "65536", "--modes", "statistical,very-thin")
    assert code == 0
    rows = {r["mode"]: r for r in csv.DictReader(io.StringIO(out))}
    assert rows["statistical"]["convergent"] == "True"
    assert rows["very-thin"]["convergent"] == "False"
    assert rows["statistical"]["eps"] == "1/2"


def test_bw_verify():
    d = doc("bw", "verify", "--depth", "8", "--horizon", "100000")
    assert d["summary"]["passed"] and d["records"] == []


def test_density_csv_series():
    code, out, _ = call("density", "--set", "pow(2)", "--horizon", "1024", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "ratio"] and rows[-1] == ["1024", "5/512"]


@pytest.mark.parametrize("argv", [
    ["udensity", "--set", "ap(3,3)", "--horizon", "4096"],
    ["decompose", "--gallery", "A_frak", "--horizon", "1024", "--M", "1"],
    ["merge", "--lemma", "1", "--s", "{10,20,40,80}", "--t", "{11,25,79}", "--horizon", "100"],
    ["merge", "--lemma", "2", "--s", "blocks(pow2pair)", "--t", "pow(3)", "--horizon", "10000"],
    ["split", "--gallery", "triY", "--horizon", "5000", "--M", "1"],
    ["cover", "--set", "pow(2)", "--horizon", "1024"],
    ["gallery", "list"],
    ["bw", "branch", "--x", "010"],
    ["bw", "ar", "--x", "00", "--indices", "1,2", "--horizon", "50"],
    ["bw", "case1", "--family", "omega", "--x", "000", "--horizon", "100"],
])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_every_subcommand_runs(argv, fmt):
    code, out, err = call(*argv, "--format", fmt)
    assert code == 0, err
    assert out
    if fmt == "json":
        json.loads(out)


def test_merge_report():
    d = doc("merge", "--lemma", "1", "--s", "{10,20,40,80}", "--t", "{11,25,79}",
            "--horizon", "100")
    assert [r["block"] for r in d["records"]] == [[10, 11], [20, 25], [40], [79, 80]]
    assert d["summary"]["union_preserved"]


def test_deterministic_output():
    argv = ["classify", "--gallery", "tri", "--horizon", "65536", "--all"]
    assert call(*argv) == call(*argv)


def test_domain_error_exit_1():
    code, out, err = call("classify", "--set", "ap(3,4)", "--horizon", "10")
    assert code == 1 and out == ""
    assert "residue must satisfy" in err
    code, _, err = call("classify", "--set", "union(pow(2)", "--horizon", "10")
    assert code == 1 and "position" in err


@pytest.mark.parametrize("argv,flag", [
    (["classify", "--set", "pow(2)"], "--horizon"),
    (["classify", "--set", "pow(2)", "--horizon", "ten"], "--horizon"),
    (["converge", "--seq", "paper_x", "--limit", "1", "--eps", "x", "--horizon", "8"], "--eps"),
    (["bw", "verify", "--depth", "3"], "--horizon"),
])
def test_usage_error_exit_2(argv, flag):
    code, out, err = call(*argv)
    assert code == 2 and flag in err


def test_rational_horizon_accepted():
    d = doc("density", "--set", "pow(2)", "--horizon", "2048/2")
    assert d["summary"]["horizon"] == 1024


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thinset", "gallery", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "A_frak" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "thinset", "nosuch"], capture_output=True, text=True)
    assert proc.returncode == 2
