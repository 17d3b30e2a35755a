import json
import random
import subprocess
import sys

import pytest

from ainfty import io
from ainfty.cli import main
from ainfty.graded import GradedMap
from ainfty.hpt import SDRData

from mutations import flip_product_sign


@pytest.fixture(scope="module")
def fixtures(tmp_path_factory, corpus):
    d = tmp_path_factory.mktemp("fixtures")
    inst = next(i for i in corpus if i.has_m3)
    paths = {"instance": d / "inst.json", "category": d / "dg.json",
             "mutated": d / "mutated.json", "sdr": d / "sdr.json", "bad_sdr": d / "bad_sdr.json"}
    io.write_file(paths["instance"], io.instance_out(inst))
    io.write_file(paths["category"], io.category_out(inst.category))
    bad, _ = flip_product_sign(inst.category, 2, random.Random(0))
    io.write_file(paths["mutated"], io.category_out(bad))
    io.write_file(paths["sdr"], io.sdr_out(inst.sdr))
    s = inst.sdr
    zero_h = {p: GradedMap.zero(s.big.hom(*p), s.big.hom(*p), -1) for p in s.pairs()}
    io.write_file(paths["bad_sdr"], io.sdr_out(SDRData(s.big, s.small_homs, s.iota, s.pi, zero_h)))
    return {k: str(v) for k, v in paths.items()}


def run(*argv):
    return main([str(a) for a in argv])


def test_demo_dg_verdict(capsys):
    assert run("demo-dg") == 0
    assert capsys.readouterr().out.strip() == "a=2: EQUAL; a=1: DIFFERS at arity 2, shifts (0,1)"


def test_demo_dg_zero_shifts(capsys):
    assert run("demo-dg", "--shifts", "0") == 0
    assert capsys.readouterr().out.strip() == "a=2: EQUAL; a=1: EQUAL"


def test_verify_clean_fixture(fixtures, tmp_path):
    out = tmp_path / "report.json"
    assert run("verify", "-i", fixtures["category"], "-o", out) == 0
    rep = json.loads(out.read_text())
    assert rep["ok"] and rep["type"] == "report"


def test_verify_mutated_fixture_reports_arity_three(fixtures, tmp_path):
    out = tmp_path / "report.json"
    assert run("verify", "-i", fixtures["mutated"], "-o", out) == 1
    rep = json.loads(out.read_text())
    (check,) = rep["checks"]
    assert check["violations"] >= 1
    assert 3 in {v["arity"] for v in check["first"]}
    assert all(v["residual"] for v in check["first"])


def test_verify_zeroed_homotopy(fixtures, tmp_path):
    out = tmp_path / "report.json"
    assert run("verify", "-i", fixtures["bad_sdr"], "-o", out) == 1
    kinds = {v["kind"] for v in json.loads(out.read_text())["checks"][0]["first"]}
    assert kinds == {"d h + h d = Id - P"}


def test_verify_instance_and_prime_field(fixtures):
    assert run("verify", "-i", fixtures["instance"]) == 0
    assert run("verify", "-i", fixtures["instance"], "--field", "p:101") == 0
    assert run("verify", "-i", fixtures["mutated"], "--field", "p:101") == 1


def test_config_errors(fixtures, tmp_path):
    assert run("verify") == 2
    assert run("verify", "-i", tmp_path / "missing.json") == 2
    assert run("verify", "-i", fixtures["category"], "--arity", "6") == 2
    assert run("verify", "-i", fixtures["category"], "--field", "p:4") == 2
    assert run("transfer", "-i", fixtures["sdr"], "--field", "p:5") == 2
    assert run("transfer", "-i", fixtures["category"]) == 2
    assert run("frobnicate") == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("verify", "-i", bad) == 2


def test_transfer_minimal_model_enlarge(fixtures, tmp_path):
    f = tmp_path / "f.json"
    assert run("transfer", "-i", fixtures["sdr"], "-o", f) == 0
    assert io.read_file(f)[0] == "functor"
    assert run("verify", "-i", f) == 0
    m = tmp_path / "m.json"
    assert run("minimal-model", "-i", fixtures["category"], "-o", m, "--arity", "4") == 0
    e = tmp_path / "e.json"
    assert run("enlarge", "-i", m, "-a", "1", "--shifts", "0,1,-1", "-o", e, "--arity", "3") == 0
    kind, E = io.read_file(e)
    assert kind == "category" and E.convention == 1 and len(E.objects) == 3 * len(
        io.read_file(m)[1].objects)


@pytest.mark.parametrize("a", (1, 2))
def test_square_check(fixtures, a):
    assert run("square-check", "-i", fixtures["instance"], "-a", a) == 0


def test_square_check_cross_pairing(fixtures, tmp_path):
    out = tmp_path / "sq.json"
    assert run("square-check", "-i", fixtures["instance"], "--cross", "-o", out) == 1
    first = json.loads(out.read_text())["checks"][0]["first"]
    assert first["kind"] == "product"
    p1 = {json.dumps(k): v for k, v in first["path1"]}
    p2 = {json.dumps(k): v for k, v in first["path2"]}
    assert p1 and set(p1) == set(p2)
    assert all(io.parse_scalar(p1[k]) == -io.parse_scalar(p2[k]) for k in p1)


def test_cone_and_tw_check(fixtures, tmp_path):
    out = tmp_path / "cones.json"
    assert run("cone", "-i", fixtures["instance"], "-a", "1", "-o", out) == 0
    assert run("tw-check", "-i", out) == 0
    assert run("cone", "-i", out) == 0
    assert run("tw-check", "-i", fixtures["instance"]) == 2


def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("generate", "--seed", 5, "--size", 3, "-o", a) == 0
    assert run("generate", "--seed", 5, "--size", 3, "-o", b) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == ["inst000.json", "inst001.json", "inst002.json", "manifest.json"]
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()
    manifest = json.loads((a / "manifest.json").read_text())
    assert manifest["has_m3"] == any(e["has_m3"] for e in manifest["instances"])
    for n in names[:-1]:
        assert run("verify", "-i", a / n) == 0


def test_generate_tiny_and_empty(tmp_path):
    assert run("generate", "--seed", 1, "--size", 1, "--max-total", 2, "-o", tmp_path / "t") == 0
    assert run("verify", "-i", tmp_path / "t" / "inst000.json") == 0
    assert run("generate", "--seed", 1, "--size", 0, "-o", tmp_path / "e") == 0
    manifest = json.loads((tmp_path / "e" / "manifest.json").read_text())
    assert manifest["instances"] == [] and manifest["has_m3"] is False
    assert run("generate", "--seed", 1, "--size", 0, "--require-m3", "-o", tmp_path / "e") == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ainfty", "demo-dg"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "a=1: DIFFERS" in res.stdout
