import json
import os
import subprocess
import sys

import pytest

from tomoscope.cli import run

BODIES = {
    "ball1": {"kind": "ball", "params": {"radius": 1}},
    "ellipsoid123": {"kind": "ellipsoid", "params": {"semi_axes": [1, 2, 3]}},
    "rev_z": {"kind": "revolution", "params": {"profile": {"type": "ellipse", "radius": 1, "half_height": 2},
                                               "axis": {"point": [0, 0, 0], "direction": [0, 0, 1]}}},
    "ball4": {"kind": "ball", "params": {"radius": 1, "dim": 4}},
    "bad_schema": {"kind": "ellipsoid", "params": {"semi_axes": [1, 2]}},
    "extra_key": {"kind": "ball", "params": {"radius": 1}, "colour": "red"},
}

QUICK = ["--samples", "128", "--planes", "8"]


@pytest.fixture(scope="module")
def spec_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("bodies")
    for name, spec in BODIES.items():
        (d / f"{name}.json").write_text(json.dumps(spec))
    (d / "broken.json").write_text("{not json")
    return d


def body(spec_dir, name):
    return ["--body", str(spec_dir / f"{name}.json")]


@pytest.mark.parametrize("argv,code", [
    (["section", "@ball1", "--plane", "0,0,1,0.6"], 0),
    (["project", "@ellipsoid123", "--direction", "0,0,1"], 0),
    (["symmetry", "@ellipsoid123", "--direction", "0,0,1"], 0),
    (["starline", "--angles", "0,0.6283185307179586"], 0),
    (["midpoint-locus", "@ball1", "--point", "0,0,0.5"], 0),
    (["shadow", "@ellipsoid123", "--direction", "1,1,0"], 0),
    (["larman", "@ellipsoid123", "--point", "0.2,0.1,-0.3"], 0),
    (["revolution-point", "@rev_z", "--point", "0.3,0,0"], 2),
    (["certify", "@ellipsoid123", "--mode", "sphere"], 2),
    (["certify", "@ball1", "--mode", "sphere"], 0),
    (["certify", "@rev_z", "--mode", "revolution", "--line", "0,0,0,0,0,1"], 0),
    (["certify", "@ellipsoid123", "--mode", "axis", "--line", "0,0,0,1,1,0"], 2),
    (["theorem2", "@rev_z", "--point", "0,0,0.3"], 0),
    (["theorem2", "@ellipsoid123", "--point", "0.3,0,0"], 2),
    (["theorem3", "@ellipsoid123", "--line", "0,0.5,0,1,0,0.3"], 2),
    # input errors
    (["section", "@ball1", "--plane", "0,0,1"], 1),
    (["section", "@ball1", "--plane", "0,0,1,5"], 1),
    (["section", "@bad_schema", "--plane", "0,0,1,0"], 1),
    (["section", "@extra_key", "--plane", "0,0,1,0"], 1),
    (["section", "@broken", "--plane", "0,0,1,0"], 1),
    (["section", "--plane", "0,0,1,0"], 1),
    (["larman", "@ball1", "--point", "3,0,0"], 1),
    (["theorem45", "@ball4", "--point", "0,0.3,0,0"], 1),
    (["theorem2", "@ball1", "--point", "0,0,0"], 1),
    (["no-such-command"], 1),
    ([], 1),
])
def test_exit_codes(spec_dir, capsys, argv, code):
    expanded = []
    for a in argv:
        expanded += body(spec_dir, a[1:]) if a.startswith("@") else [a]
    assert run(expanded + QUICK) == code
    err = capsys.readouterr().err
    if code == 1:
        assert err.startswith("tomoscope: error:") and err.count("\n") == 1
    else:
        assert err == ""


def test_report_is_deterministic(spec_dir, tmp_path, capsys):
    argv = ["larman"] + body(spec_dir, "ellipsoid123") + ["--point", "0.2,0.1,-0.3", "--seed", "7",
                                                         "--no-timestamp", "--json"] + QUICK
    outs = []
    for k in range(2):
        assert run(argv + ["--out", str(tmp_path / f"r{k}")]) == 0
        outs.append(capsys.readouterr().out)
    a = (tmp_path / "r0" / "report.json").read_bytes()
    b = (tmp_path / "r1" / "report.json").read_bytes()
    assert a.replace(b"r0", b"r1") == b
    rep = json.loads(outs[0])
    assert rep["command"] == "larman" and rep["exit_code"] == 0
    assert "timestamp" not in rep and "wall_clock_s" not in rep
    assert rep["budgets"]["seed"] == 7


def test_failure_report_carries_witness(spec_dir, capsys):
    assert run(["certify"] + body(spec_dir, "ellipsoid123") + ["--mode", "sphere", "--json"]) == 2
    rep = json.loads(capsys.readouterr().out)
    assert rep["result"]["verdict"] == "Fail" and rep["result"]["witness"]
    assert rep["result"]["details"]["radial_spread"] == pytest.approx(2.0, abs=5e-3)  # sampled boundary


def test_artifacts_written(spec_dir, tmp_path, capsys):
    out = tmp_path / "art"
    argv = ["section"] + body(spec_dir, "ball1") + ["--plane", "0,0,1,0.6", "--svg", "--csv", "--out", str(out)]
    assert run(argv) == 0
    assert sorted(os.listdir(out)) == ["report.json", "section.csv", "section.svg"]
    assert (out / "section.svg").read_text().startswith("<svg")
    rows = (out / "section.csv").read_text().splitlines()
    assert rows[1] == "theta,h,x,y" and len(rows) == 362
    assert not [f for f in os.listdir(out) if f.startswith(".tmp")]


def test_svg_without_out_goes_to_cwd(spec_dir, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(["section"] + body(spec_dir, "ball1") + ["--plane", "0,0,1,0.6", "--svg"]) == 0
    assert os.listdir(tmp_path) == ["section.svg"]
    capsys.readouterr()
    assert run(["section"] + body(spec_dir, "ball1") + ["--plane", "0,0,1,0.6", "--json"]) == 0
    res = json.loads(capsys.readouterr().out)["result"]
    # the section is the disc of radius 0.8
    assert abs(res["h_min"] - 0.8) <= 1e-9 and abs(res["h_max"] - 0.8) <= 1e-9


def test_config_file(spec_dir, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tolerances": {"analytic": 0.3}, "budgets": {"n_boundary": 2000}}))
    argv = ["certify"] + body(spec_dir, "ellipsoid123") + ["--mode", "sphere", "--config", str(cfg), "--json"]
    assert run(argv) == 2  # half-spread 1.0 still exceeds 0.3
    cfg.write_text(json.dumps({"tolerances": {"nope": 1}}))
    assert run(argv) == 1


def test_console_script(spec_dir):
    exe = [sys.executable, "-c", "from tomoscope.cli import main; main()"]
    proc = subprocess.run(exe + ["section"] + body(spec_dir, "ball1") + ["--plane", "0,0,1,0.6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "section: pass" in proc.stdout
