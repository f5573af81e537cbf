import json
import random
from importlib import resources

import pytest

from hlts import InvalidInput, Matrix
from hlts.io import (LieOOperator, LtsMorphism, OperatorMorphism, ParseError, Workspace, load_workspace,
                     parse_workspace, print_workspace)
from hlts.postlts import post_lts_from_o
from hlts.samples import (e4_operator, e4_post_lts, random_lie_o_operator, random_valid_o_operator,
                          unextendable_deformation)


def data(name):
    return str(resources.files("hlts") / "data" / name)


def operator_workspace(op, tag="x"):
    ws = Workspace()
    ws.algebras[f"{tag}_g"] = op.target
    if op.source is not op.target:
        ws.algebras[f"{tag}_h"] = op.source
    ws.actions[f"{tag}_act"] = op.act
    ws.maps[f"{tag}_A"] = op
    return ws


def roundtrip(ws):
    text = print_workspace(ws)
    back = parse_workspace(text)
    assert back == ws
    assert print_workspace(back) == text
    return back


@pytest.mark.parametrize("name", ["e4.json", "e4_post.json", "unextendable.json"])
def test_bundled_files_roundtrip(name):
    with open(data(name), encoding="utf-8") as fh:
        text = fh.read()
    ws = parse_workspace(text)
    assert print_workspace(ws) == text
    roundtrip(ws)


def test_random_operators_roundtrip():
    rng = random.Random(0)
    for i in range(25):
        op = random_valid_o_operator(rng, 3)
        back = roundtrip(operator_workspace(op))
        got = back.maps["x_A"]
        assert got.A == op.A and got.kappa == op.kappa
        assert got.act.theta == op.act.theta and got.source.alpha == op.source.alpha


def test_every_section_roundtrips():
    rng = random.Random(1)
    op = e4_operator(1)
    ws = operator_workspace(op, "e")
    ws.maps["hom"] = OperatorMorphism(op, op, op.source.alpha, op.target.alpha)
    ws.maps["mor"] = LtsMorphism(op.target, op.target, Matrix.identity(4))
    ws.post_lts["p"] = post_lts_from_o(op)
    ws.post_lts["bad"] = e4_post_lts()
    A, act, kappa = random_lie_o_operator(rng, 3)
    ws.lie_algebras["lg"] = act.algebra
    if act.module is not act.algebra:
        ws.lie_algebras["lh"] = act.module
    ws.lie_actions["rho"] = act
    ws.maps["L"] = LieOOperator(act, A, kappa)
    d = unextendable_deformation()
    ws.algebras["aff2"], ws.algebras["ab"] = d.op.target, d.op.source
    ws.actions["R"] = d.op.act
    ws.maps["U"] = d.op
    ws.deformations["D"] = d
    back = roundtrip(ws)
    assert back.deformations["D"].op is back.maps["U"]
    assert back.maps["hom"].source is back.maps["e_A"]


def test_fractions_survive_exactly():
    op = e4_operator("3/7")
    ws = roundtrip(operator_workspace(op))
    assert str(ws.maps["x_A"].kappa) == "3/7"
    assert '"kappa": "3/7"' in print_workspace(ws)


def test_empty_document_is_an_empty_workspace():
    assert parse_workspace("") == Workspace()
    assert parse_workspace("  \n") == Workspace()
    assert parse_workspace("{}") == Workspace()


def located(text):
    with pytest.raises(ParseError) as info:
        parse_workspace(text)
    return info.value


def test_zero_denominator_is_located():
    e = located('{"algebras": {"g": {"dim": 1, "alpha": [["1/0"]]}}}')
    assert (e.line, e.column) == (1, 42)
    assert str(e).startswith("line 1, column 42: zero denominator")


def test_error_location_on_later_lines():
    text = '{\n  "algebras": {\n    "g": {\n      "dim": 2,\n      "alpha": [[1, 0], [0, "x"]]\n    }\n  }\n}'
    e = located(text)
    assert e.line == 5 and e.column == text.splitlines()[4].index('"x"') + 1


@pytest.mark.parametrize("text, fragment", [
    ('{"algebras": {"g": {"dim": 1, "colour": 3}}}', "unknown field 'colour'"),
    ('{"widgets": {}}', "unknown field 'widgets'"),
    ('{"actions": {"a": {"algebra": "nope", "module": "nope", "theta": []}}}', "unknown algebra 'nope'"),
    ('{"maps": {"m": {"action": "q", "matrix": []}}}', "unknown action 'q'"),
    ('{"algebras": {"g": {"dim": 2, "bracket": [{"args": [0, 5, 0], "out": {"1": 1}}]}}}', "out of range"),
    ('{"algebras": {"g": {"dim": 2, "bracket": [{"args": [0, 1, 0], "out": {"1": 0.5}}]}}}', "not exact"),
    ('{"algebras": {"g": {"dim": 2, "alpha": [[1, 0]]}}}', None),
    ('{"algebras": {"g": {"alpha": [[1]]}}}', None),
    ('[1]', "must be an object"),
    ('{"algebras": ', None),
])
def test_semantic_and_syntax_errors(text, fragment):
    e = located(text)
    assert e.line >= 1 and e.column >= 1
    assert str(e).startswith(f"line {e.line}, column {e.column}: ")
    if fragment:
        assert fragment in str(e)


def test_parse_error_is_an_input_error():
    assert issubclass(ParseError, InvalidInput)


def test_references_resolve_to_shared_objects():
    ws = load_workspace(data("e4.json"))
    op = ws.maps["A"]
    assert op.act is ws.actions["ad"]
    assert op.target is ws.algebras["E4"] is op.source


def test_nothing_is_completed_implicitly():
    half = {"algebras": {"g": {"dim": 2, "bracket": [{"args": [0, 1, 0], "out": {"1": 1}}]}}}
    g = parse_workspace(json.dumps(half)).algebras["g"]
    assert g.bracket.data == {(0, 1, 0, 1): 1}


def test_lookup_and_find_errors():
    ws = load_workspace(data("e4.json"))
    with pytest.raises(InvalidInput, match="known: A"):
        ws.lookup("maps", "B")
    assert ws.find("E4")[0] == "algebras"
    with pytest.raises(InvalidInput):
        ws.find("missing")


def test_printing_requires_registered_references():
    op = e4_operator(1)
    ws = Workspace()
    ws.maps["A"] = op
    with pytest.raises(InvalidInput):
        print_workspace(ws)
