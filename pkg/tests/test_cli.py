import json
import subprocess
import sys
from pathlib import Path

import pytest

import gen
from parahiggs.cli import dispatch, dumps, main
from parahiggs.higgsfield import HiggsField
from parahiggs.parabolic import ParabolicBundle

DATA = Path(__file__).parent / "data"
HIGGS = str(DATA / "fixture_higgs.json")
BUNDLE = str(DATA / "fixture_bundle.json")


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_data_files_match_generators():
    assert ParabolicBundle.from_json(json.loads((DATA / "fixture_bundle.json").read_text())) == gen.fixture_bundle()
    assert HiggsField.from_json(json.loads((DATA / "fixture_higgs.json").read_text())) == gen.fixture_higgs()
    assert ParabolicBundle.from_json(json.loads((DATA / "unstable_bundle.json").read_text())) == gen.unstable_bundle()


def test_audit(capsys):
    code, rep, _ = run(["audit", "--g", "0", "--r", "2", "--n", "4", "--flags", "full"], capsys)
    assert code == 0 and rep["ok"]
    assert rep["values"]["dim_P"] == 9 and rep["values"]["rank"] == 2
    code, rep, _ = run(["audit", "--r", "3", "--n", "4", "--flags", "2,1"], capsys)
    assert code == 0 and rep["input"]["multiplicities"] == [[2, 1]] * 4


def test_bundle_check(capsys):
    code, rep, _ = run(["bundle-check", BUNDLE], capsys)
    assert code == 0
    assert rep["pdeg"] == "2021/1000" and rep["slope"] == "2021/2000"
    assert rep["stability"]["verdict"] == "stable"
    assert rep["genericity"]["generic"]
    assert rep["parabolic_twist_0"] == {"h0": 1, "h1": 1, "chi": 0}
    code, rep, _ = run(["bundle-check", str(DATA / "unstable_bundle.json")], capsys)
    assert code == 0 and rep["stability"]["verdict"] == "unstable"


def test_higgs_check(capsys):
    code, rep, _ = run(["higgs-check", HIGGS], capsys)
    assert code == 0
    assert rep["class"] == "parabolic" and rep["trace_residue_sum"] == "0"
    assert rep["residues"]["1"] == [["0", "-1/6"], ["-1/6", "0"]]
    assert rep["hitchin"] == {"c": [[], ["0", "0", "-1"]]}
    data = gen.fixture_higgs().to_json()
    data["numerator"][1][0] = ["0", "0", "0", "1"]
    code, rep, _ = run(["higgs-check", json.dumps(data)], capsys)
    assert code == 0 and rep["class"] == "invalid"
    assert rep["offending"] == {"entry": [1, 0], "degree": 3, "bound": 2}


def test_spectral(capsys):
    code, rep, _ = run(["spectral", HIGGS], capsys)
    assert code == 0
    assert rep["smooth"] is False and rep["singular_point"] == ["0", "0"]
    assert rep["F"] == "y^2 - t^2"


def test_flags_and_forget(capsys):
    code, rep, _ = run(["flags", HIGGS, "--point", "1"], capsys)
    assert code == 0 and rep["count"] == 2
    code, rep, _ = run(["forget", HIGGS, "--to", "2", "--weights", "1/4"], capsys)
    assert code == 0 and rep["class_after"] == "parabolic"
    assert HiggsField.from_json(rep["higgs"]).bundle == ParabolicBundle.from_json(rep["bundle"])


def test_sharp(capsys):
    code, rep, _ = run(["sharp", HIGGS], capsys)
    assert code == 0
    for k, v in {"dim_tangent": 9, "rank": 2, "kernel": 7, "skew_ok": True, "pairing_perfect": True}.items():
        assert rep[k] == v


def test_exit_codes(capsys):
    code, rep, _ = run(["spectral", "{not json"], capsys)
    assert code == 2 and rep["error_kind"] == "malformed"
    code, rep, _ = run(["spectral", str(DATA / "missing.json")], capsys)
    assert code == 2
    bad = gen.fixture_higgs().to_json()
    bad["bundle"]["curve"]["points"] = ["1", "1", "2", "-2"]
    code, rep, _ = run(["spectral", json.dumps(bad)], capsys)
    assert code == 1 and rep["error_kind"] == "invalid"
    code, rep, _ = run(["sharp", json.dumps({"bundle": gen.unstable_bundle().to_json(),
                                             "numerator": [[[], []], [[], []]]})], capsys)
    assert code == 1 and rep["error_kind"] == "unstable"
    # irrational eigenvalues at a marked point
    phi = gen.fixture_higgs().to_json()
    phi["bundle"]["flags"] = [{"point": p, "multiplicities": [2], "frame": [["1", "0"], ["0", "1"]],
                               "weights": ["0"]} for p in ("1", "-1", "2", "-2")]
    phi["numerator"] = [[[], ["1"]], [["2"], []]]
    code, rep, _ = run(["flags", json.dumps(phi), "--point", "1", "--multiplicities", "1,1"], capsys)
    assert code == 1 and rep["error_kind"] == "nonsplit"


def test_dispatch_unknown_command():
    code, rep = dispatch("nope", {}, None)
    assert code == 2


def test_determinism_and_output_file(tmp_path, capsys):
    _, _, first = run(["higgs-check", HIGGS], capsys)
    _, _, second = run(["higgs-check", HIGGS], capsys)
    assert first == second
    target = tmp_path / "out.json"
    assert main(["-o", str(target), "higgs-check", HIGGS]) == 0
    assert target.read_text() == first


def test_batch_parallel(tmp_path, capsys):
    jobs = [
        {"command": "audit", "options": {"r": 2, "n": 4}},
        {"command": "spectral", "input": HIGGS},
        {"command": "bundle-check", "input": BUNDLE},
        {"command": "spectral", "data": {"bundle": 3}},
    ]
    path = tmp_path / "jobs.json"
    path.write_text(json.dumps(jobs))
    code, serial, _ = run(["batch", str(path)], capsys)
    code2, parallel, _ = run(["batch", str(path), "--jobs", "2"], capsys)
    assert serial == parallel
    assert code == code2 == 1
    assert [r["exit_code"] for r in serial] == [0, 0, 0, 1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parahiggs", "audit", "--r", "2", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"]


def test_dumps_serializes_fractions():
    from fractions import Fraction
    assert dumps({"x": Fraction(1, 3)}) == '{\n  "x": "1/3"\n}'


@pytest.mark.parametrize("obj", [gen.fixture_bundle(), gen.unstable_bundle()])
def test_bundle_round_trip_through_text(obj):
    assert ParabolicBundle.from_json(json.loads(dumps(obj.to_json()))) == obj
