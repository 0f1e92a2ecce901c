import json
import subprocess
import sys

import pytest

from clusterscat.cli import main
from clusterscat.scat import ScatteringDiagram


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_affine_limiting_ray(capsys):
    code, out, _ = run(capsys, "build", "--b", "0,2;-2,0", "--order", "10", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["consistent"]
    assert obj["limiting_ray_function"].startswith("1 + 2 * y1*y2 + 3 * y1^2*y2^2")
    d = ScatteringDiagram.from_json(obj)
    assert d.dumps() == ScatteringDiagram.from_json(json.loads(d.dumps())).dumps()


def test_build_trivial(capsys):
    code, out, _ = run(capsys, "build", "--b", "0,0;0,0", "--order", "4", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and [w["cone"]["type"] for w in obj["walls"]] == ["hyperplane", "hyperplane"]


def test_build_g2(capsys):
    code, out, _ = run(capsys, "build", "--b", "0,1;-3,0", "--order", "8", "--format", "json")
    rays = [w for w in json.loads(out)["walls"] if w["cone"]["type"] == "cone"]
    assert code == 0 and len(rays) == 4


def test_build_rank3(capsys):
    code, out, _ = run(capsys, "build", "--b", "0,1,0;-1,0,1;0,-1,0", "--order", "4")
    assert code == 0 and "consistent" in out


def test_outputs_honour_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERSCAT_OUT", str(tmp_path))
    code, _, _ = run(capsys, "build", "--b", "0,1;-2,0", "--order", "6", "--svg", "d.svg", "--out", "d.json")
    assert code == 0
    assert (tmp_path / "d.svg").read_text().startswith("<svg")
    assert json.loads((tmp_path / "d.json").read_text())["order"] == 6
    code, _, _ = run(capsys, "theta", "--a", "-3", "--b", "1", "--g", "-2,3", "--svg", "t.svg")
    assert code == 0 and "<line" in (tmp_path / "t.svg").read_text()


def test_deterministic(capsys):
    argv = ["cambrian", "build", "--type", "B3", "--format", "json", "--check", "all", "--order", "6"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first == second
    assert json.loads(first[1])["checks"]["consistency"]["ok"]


def test_theta_examples_and_trivial(capsys):
    code, out, _ = run(capsys, "theta", "--a", "-3", "--b", "1", "--g", "-2,3", "--endpoint", "7/9,3/9",
                       "--format", "json")
    assert code == 0 and json.loads(out)["series"].startswith("1 + 2 * y1 + 3 * y1*y2")
    code, out, _ = run(capsys, "theta", "--a", "-2", "--b", "2", "--g", "1,0")
    assert code == 0 and out.strip() == "theta_(1, 0) = x1 * (1)"


def test_cluster_commands(capsys):
    code, out, _ = run(capsys, "cluster", "narayana", "--order", "10", "--route", "all")
    assert code == 0 and "routes agree" in out
    code, out, _ = run(capsys, "cluster", "f-poly", "--a", "-2", "--b", "2", "--i", "-5", "--format", "json")
    assert code == 0 and json.loads(out)["g_vector"] == [-5, 4]
    code, out, _ = run(capsys, "cluster", "limiting-wall", "--a", "-4", "--b", "1", "--order", "6")
    assert code == 0 and out.startswith("1 + 3 * y1*y2^2")


@pytest.mark.parametrize("check,extra", [("narayana", ["--order", "10"]), ("camb-consist", ["--type", "A3", "--order", "8"]),
                                         ("hypergeom", [])])
def test_verify_passes(capsys, check, extra):
    code, out, _ = run(capsys, "verify", check, *extra, "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


@pytest.mark.parametrize("argv", [
    ["verify", "bogus"],
    ["build", "--b", "0,1;-1,0", "--order", "33"],
    ["build", "--b", "0,1;-1,0", "--order", "0"],
    ["theta", "--a", "-1", "--b", "1", "--g", "1/2,0"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["build", "--b", "0,1;1,0"],
    ["build", "--b", "0,1"],
    ["theta", "--a", "-1", "--b", "1", "--g", "0,0"],
    ["theta", "--a", "-1", "--b", "1", "--g", "-1,1", "--endpoint", "0,1"],
    ["cambrian", "build"],
    ["verify", "hypergeom", "--order", "5"],
])
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("clusterscat: error:")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "clusterscat", "cluster", "narayana", "--order", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "routes agree" in r.stdout
