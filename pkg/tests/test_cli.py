import json
import random
import subprocess
import sys
from importlib import resources

import pytest
from support import cocycle_basis

from hlts import Matrix, check_hom_lts, check_post_lts
from hlts.exact import parse_scalar
from hlts.bridge import post_lie_from_o
from hlts.cli import run
from hlts.deformation import TruncatedDeformation
from hlts.io import LieOOperator, Workspace, load_workspace, parse_workspace, print_workspace
from hlts.samples import random_lie_o_operator


def data(name):
    return str(resources.files("hlts") / "data" / name)


def js(argv):
    status, text = run(list(argv) + ["--format", "json"])
    doc = json.loads(text)
    assert doc["status"] == status
    return status, doc


@pytest.fixture
def lie_file(tmp_path):
    """A workspace holding a Lie O-operator and its induced post-Lie algebra."""
    A, act, kappa = random_lie_o_operator(random.Random(8), 3)
    post, _, _ = post_lie_from_o(A, act, kappa)
    ws = Workspace()
    ws.lie_algebras["g"] = act.algebra
    if act.module is not act.algebra:
        ws.lie_algebras["h"] = act.module
    ws.lie_actions["rho"] = act
    ws.maps["L"] = LieOOperator(act, A, kappa)
    ws.post_lie["P"] = post
    path = tmp_path / "lie.json"
    path.write_text(print_workspace(ws))
    return str(path)


@pytest.mark.parametrize("kappa", ["0", "1", "-2", "3/5"])
def test_check_passes_with_status_zero(kappa):
    status, doc = js(["check", "o-op", data("e4.json"), "--kappa", kappa])
    assert status == 0 and all(r["passed"] for r in doc["reports"])


def test_violations_give_status_one():
    status, doc = js(["check", "post-lts", data("e4_post.json")])
    assert status == 1 and not doc["reports"][0]["passed"]
    assert run(["check", "post-lts", data("e4_post.json")])[0] == 1


@pytest.mark.parametrize("argv", [
    ["check", "o-op", "/nonexistent/ws.json"],
    ["check", "o-op", data("e4.json"), "missing"],
    ["check", "o-op", data("e4.json"), "--kappa", "1/0"],
    ["cohomology", data("e4.json"), "A", "--degree", "3"],
    ["deform", "check", data("e4.json"), "nothing"],
])
def test_input_errors_give_status_two(argv):
    status, text = run(argv)
    assert status == 2 and text.startswith("error: ")
    status, doc = js(argv)
    assert status == 2 and doc["error"]


def test_malformed_file_reports_its_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"algebras": {"g": {"dim": 1, "alpha": [["1/0"]]}}}')
    status, text = run(["check", "lts", str(bad)])
    assert status == 2 and "line 1, column 42: zero denominator" in text


def test_json_output_is_deterministic():
    for argv in (["check", "post-lts", data("e4_post.json")], ["selftest", "--seed", "3"],
                 ["cohomology", data("e4.json"), "A", "--degree", "1"]):
        assert run(argv + ["--format", "json"]) == run(argv + ["--format", "json"])


def test_cohomology_degree_one():
    status, doc = js(["cohomology", data("e4.json"), "A", "--degree", "1"])
    c = doc["results"]["cohomology"]
    assert status == 0
    assert (c["dimC"], c["dimZ"], c["dimB"], c["dimH"]) == (8, 6, 0, 6)


def test_build_descent_and_semidirect(tmp_path):
    out = tmp_path / "d.json"
    status, _ = run(["build", "descent", data("e4.json"), "A", "-o", str(out)])
    assert status == 0
    d = load_workspace(str(out)).algebras["A_descent"]
    assert check_hom_lts(d).passed
    status, doc = js(["build", "semidirect", data("e4.json"), "A"])
    g = parse_workspace(json.dumps(doc["results"]["workspace"])).algebras["A_semidirect"]
    assert g.dim == 8 and check_hom_lts(g).passed


def test_build_post_from_o_and_adjacent(tmp_path):
    out = tmp_path / "p.json"
    run(["build", "post-from-o", data("e4.json"), "A", "--kappa", "3/5", "-o", str(out)])
    p = load_workspace(str(out)).post_lts["A_post"]
    assert check_post_lts(p).passed
    assert run(["check", "post-lts", str(out)])[0] == 0
    status, doc = js(["build", "adjacent", str(out), "A_post"])
    assert status == 0 and "A_post_adjacent" in doc["results"]["workspace"]["algebras"]


def test_build_rejects_the_wrong_kind():
    assert run(["build", "semidirect", data("e4.json"), "E4"])[0] == 2
    assert run(["build", "adjacent", data("e4_post.json"), "P"])[0] == 2


def test_bridge_commands(lie_file):
    assert run(["check", "o-op", lie_file])[0] == 0
    status, doc = js(["bridge", "diagram", lie_file, "P"])
    assert status == 0 and doc["results"]["diagram"]["commutes"]
    assert doc["results"]["diagram"]["via_post_lts"] == doc["results"]["diagram"]["via_hom_lie"]
    status, doc = js(["build", "lts-from-lie", lie_file, "g"])
    g = parse_workspace(json.dumps(doc["results"]["workspace"])).algebras["g_lts"]
    assert check_hom_lts(g).passed
    status, doc = js(["build", "post-lts-from-post-lie", lie_file, "P"])
    p = parse_workspace(json.dumps(doc["results"]["workspace"])).post_lts["P_lts"]
    assert check_post_lts(p).passed


def test_lint_completes_skew_partners(tmp_path):
    half = {"algebras": {"g": {"dim": 2, "bracket": [{"args": [0, 1, 0], "out": {"1": 1}}]}},
            "actions": {"ad": {"algebra": "g", "module": "g", "theta": []}},
            "maps": {"A": {"action": "ad", "matrix": [[0, 0], [0, 0]]}}}
    src = tmp_path / "half.json"
    src.write_text(json.dumps(half))
    assert run(["check", "lts", str(src)])[0] == 1
    fixed = tmp_path / "full.json"
    status, _ = run(["lint", "complete-skew", str(src), "-o", str(fixed)])
    assert status == 0
    ws = load_workspace(str(fixed))
    g = ws.algebras["g"]
    assert g.bracket.data == {(0, 1, 0, 1): 1, (1, 0, 0, 1): -1}
    assert ws.maps["A"].act.algebra is g
    assert run(["check", "lts", str(fixed)])[0] == 0


def test_lint_reports_conflicts(tmp_path):
    bad = {"algebras": {"g": {"dim": 2, "bracket": [{"args": [0, 1, 0], "out": {"1": 1}},
                                                     {"args": [1, 0, 0], "out": {"1": 1}}]}}}
    src = tmp_path / "c.json"
    src.write_text(json.dumps(bad))
    status, doc = js(["lint", "complete-skew", str(src)])
    assert status == 1 and doc["results"]["conflicts"] == {"algebras.g": [[0, 1, 0, 1], [1, 0, 0, 1]]}


def test_deform_commands():
    f = data("unextendable.json")
    assert run(["deform", "check", f, "D1"])[0] == 0
    status, doc = js(["deform", "extend", f, "D1"])
    assert status == 0 and doc["results"]["extendable"] is False and doc["results"]["term"] is None
    assert doc["results"]["obstruction"]
    status, text = run(["deform", "extend", f, "D1"])
    assert "no extension" in text
    status, doc = js(["deform", "obstruct", f, "D1"])
    assert status == 0 and doc["reports"][0]["passed"]


def test_deform_extend_finds_a_term(tmp_path):
    ws = load_workspace(data("e4.json"))
    op = ws.maps["A"]
    Z = cocycle_basis(op)[0].to_matrix()
    ws.deformations["D"] = TruncatedDeformation(op, (Z,), "D")
    path = tmp_path / "d.json"
    path.write_text(print_workspace(ws))
    assert run(["deform", "check", str(path), "D"])[0] == 0
    status, doc = js(["deform", "extend", str(path), "D"])
    assert status == 0 and doc["results"]["extendable"]
    term = Matrix.from_rows([[parse_scalar(x) for x in row] for row in doc["results"]["term"]])
    ws.deformations["D2"] = TruncatedDeformation(op, (Z, term), "D2")
    path.write_text(print_workspace(ws))
    assert run(["deform", "check", str(path), "D2"])[0] == 0


def test_selftest_passes():
    status, text = run(["selftest"])
    assert status == 0 and "24/24" in text


def test_console_entry_point_exit_codes():
    cmd = [sys.executable, "-m", "hlts.cli"]
    assert subprocess.run(cmd + ["check", "o-op", data("e4.json")], capture_output=True).returncode == 0
    assert subprocess.run(cmd + ["check", "post-lts", data("e4_post.json")],
                          capture_output=True).returncode == 1
    r = subprocess.run(cmd + ["check", "o-op", "/nonexistent"], capture_output=True, text=True)
    assert r.returncode == 2 and r.stderr.startswith("error: ")
    assert subprocess.run(cmd + ["frobnicate"], capture_output=True).returncode == 2
