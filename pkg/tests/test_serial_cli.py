import json
import subprocess
import sys

import pytest

from conftest import ROOT
from halg.cli import check_file, cmd_check, construct_doc, dumps, main
from halg.fixtures import GOOD, CORRUPT, failing_ids, load_manifest
from halg.hopf import verify_hopf
from halg.serial import SpecError, decode, enc_hopf, enc_calculus
from halg.kahler import kahler_fixture
from halg.serial import enc_kahler

FIX = ROOT / "fixtures"


# ---------------------------------------------------------------- serialization

@pytest.mark.parametrize("pid", ["pair:2", "point:S3", "enveloping:M2", "cm:Z2:C2", "calculus:action:Z2:swap2",
                                 "finite1forms:2", "toykahler", "laplacian"])
def test_construct_decode_roundtrip(pid):
    doc = construct_doc(pid)
    st = doc["structures"]["main"]
    obj = decode(st, "main")
    kind = st["kind"]
    if kind == "hopf-algebroid":
        again = enc_hopf(obj)
    elif kind == "calculus":
        again = enc_calculus(obj, with_h0="h0" in st)
    elif kind == "kahler":
        again = enc_kahler(obj)
    else:
        return
    again.setdefault("preset", st.get("preset"))
    for k in st:
        assert json.dumps(again[k], sort_keys=True) == json.dumps(st[k], sort_keys=True), k


def test_decoded_structure_still_verifies():
    obj = decode(construct_doc("action:Z2:swap2")["structures"]["main"], "main")
    assert verify_hopf(obj.core).ok


def test_decode_errors_locate_the_problem():
    st = construct_doc("pair:2")["structures"]["main"]
    st["S"]["cols"]["(0,1)"] = {"(9,9)": "1"}
    with pytest.raises(SpecError) as e:
        decode(st, "main")
    assert "main" in str(e.value) and "(9,9)" in str(e.value)
    st = construct_doc("pair:2")["structures"]["main"]
    st["S"]["cols"]["(0,1)"] = {"(1,0)": "0.5"}
    with pytest.raises(SpecError):
        decode(st, "main")


def test_dumps_is_canonical():
    a, b = construct_doc("pair:3"), construct_doc("pair:3")
    assert dumps(a) == dumps(b) and dumps(a).endswith("\n")


# ---------------------------------------------------------------- corpus

def test_corpus_is_current(tmp_path):
    from halg.fixtures import write_corpus
    write_corpus(tmp_path)
    for p in sorted(tmp_path.iterdir()):
        assert (FIX / p.name).read_bytes() == p.read_bytes(), p.name


@pytest.mark.parametrize("name", sorted(GOOD))
def test_good_fixtures_pass(name):
    rep = check_file(FIX / name)
    assert rep["passed"], failing_ids(rep)


@pytest.mark.parametrize("name", sorted(CORRUPT))
def test_corruptions_fail_as_documented(name):
    rep = check_file(FIX / name)
    assert not rep["passed"]
    assert failing_ids(rep) == load_manifest(FIX)[name]["failing"]
    assert CORRUPT[name][1] in failing_ids(rep)
    assert all(it["witness"] for s in rep["suites"] for it in s["items"] if not it["passed"])


# ---------------------------------------------------------------- CLI

def run(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "halg", *args], capture_output=True, text=True, cwd=cwd)


def test_exit_codes(tmp_path):
    empty = tmp_path / "empty.spec"
    empty.write_text("")
    assert main(["check", str(empty)]) == 2
    bad = tmp_path / "bad.spec"
    bad.write_text('{"format": "halg-spec",\n "version": 1,,}')
    r = run("check", str(bad))
    assert r.returncode == 2 and "line 2 column" in r.stderr
    assert main(["check", str(FIX / "pair3.spec")]) == 0
    assert main(["check", str(FIX / "broken-antipode.spec")]) == 1
    r = run("construct", "nosuch:1", "--out", str(tmp_path / "x.spec"))
    assert r.returncode == 2 and "known presets" in r.stderr
    assert run("frobnicate").returncode == 2


def test_unknown_suite_and_reference(tmp_path):
    doc = construct_doc("pair:2")
    doc["checks"] = [{"suite": "nonsense", "target": "main"}]
    p = tmp_path / "s.spec"
    p.write_text(dumps(doc))
    assert main(["check", str(p)]) == 2
    doc["checks"] = [{"suite": "hopf", "target": "nowhere"}]
    p.write_text(dumps(doc))
    assert main(["check", str(p)]) == 2


def test_malformed_structure_is_an_input_error(tmp_path, capsys):
    doc = construct_doc("pair:2")
    del doc["structures"]["main"]["S"]
    p = tmp_path / "s.spec"
    p.write_text(dumps(doc))
    assert main(["check", str(p)]) == 2
    assert "structures.main: missing field 'S'" in capsys.readouterr().err


def test_wrong_target_kind_is_an_input_error(tmp_path):
    doc = construct_doc("pair:2")
    doc["checks"] = [{"suite": "kahler", "target": "main"}]
    p = tmp_path / "s.spec"
    p.write_text(dumps(doc))
    assert main(["check", str(p)]) == 2


def test_construct_pair2(tmp_path):
    out = tmp_path / "p.spec"
    assert main(["construct", "pair:2", "--out", str(out)]) == 0
    st = json.loads(out.read_text())["structures"]["main"]
    assert st["dim H"] == 4
    maps = [st["left"][k] for k in ("s", "t", "delta", "eps")] + [st["right"][k] for k in ("s", "t", "delta", "eps")]
    assert len(maps) == 8 and all("cols" in m for m in maps)


def test_construct_finite_set_has_h0(tmp_path):
    out = tmp_path / "f.spec"
    r = run("construct", "finite1forms:2", "--out", str(out))
    assert r.returncode == 0 and "dim H0 5" in r.stdout
    assert json.loads(out.read_text())["structures"]["main"]["dim H0"] == 5


def _inv(tmp_path, pid):
    out = tmp_path / "x.spec"
    main(["construct", pid, "--out", str(out)])
    r = run("invariants", str(out), "--id", "main", "--format", "json")
    assert r.returncode == 0
    return json.loads(r.stdout)


def test_invariants(tmp_path):
    inv = _inv(tmp_path, "calculus:action:Z2:swap2")
    assert [d["dim"] for d in inv["degrees"]][:2] == [1, 1]
    inv = _inv(tmp_path, "unit:3")
    assert inv["dim"] == inv["ambient dim"] == 3
    inv = _inv(tmp_path, "pair:3")
    assert inv["dim"] == 1
    assert main(["invariants", str(tmp_path / "x.spec"), "--id", "missing"]) == 2


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    spec = str(FIX / "presets.spec")
    assert main(["check", spec, "--format", "json", "--out", str(a)]) == 0
    assert main(["check", spec, "--format", "json", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    r = run("check", spec, "--format", "json")
    assert r.stdout == a.read_text()


def test_text_report(capsys):
    assert cmd_check(FIX / "leaking-bigrading.spec") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "hermitian/complex/bigrading-star" in out


def test_console_script_installed():
    r = subprocess.run(["halg", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "construct" in r.stdout


def test_crashing_suite_is_reported_not_raised(tmp_path, monkeypatch):
    spec = tmp_path / "env.spec"
    assert main(["construct", "enveloping:C2", "--out", str(spec)]) == 0
    monkeypatch.setenv("HALG_MAX_DIM", "8")
    rep = check_file(spec)
    errored = [s for s in rep["suites"] if s.get("info", {}).get("errored")]
    assert errored and not rep["passed"]
    assert "DimensionTooLarge" in errored[0]["items"][0]["witness"]
    assert all(s["passed"] for s in rep["suites"] if s not in errored)
