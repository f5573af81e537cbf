"""The JSON workspace format.

A workspace is one JSON object with optional sections ``algebras``,
``lie_algebras``, ``actions``, ``lie_actions``, ``maps``, ``post_lts``,
``post_lie`` and ``deformations``; each maps names to entries.  Scalars are
integers or ``"p/q"`` strings, matrices are lists of rows, and a tensor is a
list of ``{"args": [i, j, ...], "out": {"l": c}}`` entries with 0-based
indices.  Omitted entries are zero and nothing is completed implicitly.

Syntax errors come from :mod:`json`; semantic errors carry the line and
column of the offending value, recovered from a YAML composition of the same
text (JSON is a subset of YAML).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

import yaml

from .bridge import HomLieAlgebra, HomPostLieAlgebra, LieAction
from .deformation import TruncatedDeformation
from .exact import Matrix, RationalParseError, Tensor, format_scalar, parse_scalar
from .lts import HomLts
from .ooperator import WeightedOOperator
from .postlts import HomPostLts
from .report import InvalidInput
from .rep import Action

SECTIONS = ("algebras", "lie_algebras", "actions", "lie_actions", "maps",
            "post_lts", "post_lie", "deformations")


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True, eq=False)
class LieOOperator:
    """A weighted O-operator between Hom-Lie algebras."""

    act: LieAction
    A: Matrix
    kappa: Fraction = Fraction(0)
    name: str = ""


@dataclass(frozen=True, eq=False)
class LtsMorphism:
    source: HomLts
    target: HomLts
    matrix: Matrix
    name: str = ""


@dataclass(frozen=True, eq=False)
class OperatorMorphism:
    """A candidate homomorphism ``(phi_h, phi_g)`` between two O-operators."""

    source: WeightedOOperator
    target: WeightedOOperator
    phi_h: Matrix
    phi_g: Matrix
    name: str = ""


@dataclass
class Workspace:
    algebras: dict = field(default_factory=dict)
    lie_algebras: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    lie_actions: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    post_lts: dict = field(default_factory=dict)
    post_lie: dict = field(default_factory=dict)
    deformations: dict = field(default_factory=dict)

    def lookup(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise InvalidInput(f"no entry {name!r} in {section} (known: {known})")
        return table[name]

    def find(self, name: str):
        """``(section, entry)`` for a name, searching every section."""
        hits = [(s, getattr(self, s)[name]) for s in SECTIONS if name in getattr(self, s)]
        if not hits:
            raise InvalidInput(f"no entry named {name!r}")
        if len(hits) > 1:
            raise InvalidInput(f"name {name!r} is ambiguous across {', '.join(s for s, _ in hits)}")
        return hits[0]

    def to_doc(self) -> dict:
        return _plain(_workspace_doc(self))

    def __eq__(self, other):
        return isinstance(other, Workspace) and self.to_doc() == other.to_doc()


# located JSON ----------------------------------------------------------------------

@dataclass
class Node:
    value: object
    line: int
    column: int

    def fail(self, message: str):
        raise ParseError(message, self.line, self.column)


_INT = re.compile(r"^-?(0|[1-9]\d*)$")


def _wrap(node) -> Node:
    line, col = node.start_mark.line + 1, node.start_mark.column + 1
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            out[k.value] = _wrap(v)
        return Node(out, line, col)
    if isinstance(node, yaml.SequenceNode):
        return Node([_wrap(v) for v in node.value], line, col)
    raw = node.value
    if node.style in ('"', "'"):
        return Node(raw, line, col)
    if raw in ("true", "false"):
        return Node(raw == "true", line, col)
    if raw == "null":
        return Node(None, line, col)
    if _INT.match(raw):
        return Node(int(raw), line, col)
    return Node(float(raw), line, col)


def _located(text: str) -> Node | None:
    if not text.strip():
        return None
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return _wrap(yaml.compose(text, Loader=yaml.SafeLoader))


# field readers ---------------------------------------------------------------------

def _obj(node: Node, what: str, required=(), optional=()) -> dict:
    if not isinstance(node.value, dict):
        node.fail(f"{what} must be an object")
    allowed = set(required) | set(optional)
    for k in node.value:
        if k not in allowed:
            node.fail(f"unknown field {k!r} in {what}")
    for k in required:
        if k not in node.value:
            node.fail(f"{what} is missing field {k!r}")
    return node.value


def _scalar(node: Node) -> Fraction:
    if isinstance(node.value, float):
        node.fail(f"{node.value!r} is not exact; write rationals as \"p/q\"")
    try:
        return parse_scalar(node.value)
    except RationalParseError as e:
        node.fail(str(e))


def _int(node: Node, what: str, lo: int = 0, hi: int | None = None) -> int:
    v = node.value
    if isinstance(v, bool) or not isinstance(v, int):
        node.fail(f"{what} must be an integer")
    if v < lo or (hi is not None and v >= hi):
        node.fail(f"{what} {v} out of range [{lo}, {hi})")
    return v


def _name(node: Node, what: str) -> str:
    if not isinstance(node.value, str):
        node.fail(f"{what} must be a name")
    return node.value


def _matrix(node: Node, rows: int, cols: int, what: str) -> Matrix:
    if not isinstance(node.value, list):
        node.fail(f"{what} must be a list of rows")
    if len(node.value) != rows:
        node.fail(f"{what} has {len(node.value)} rows, expected {rows}")
    out = []
    for r in node.value:
        if not isinstance(r.value, list) or len(r.value) != cols:
            r.fail(f"each row of {what} must have {cols} entries")
        out.append([_scalar(c) for c in r.value])
    return Matrix.from_rows(out, cols)


def _tensor(node: Node, in_dims: tuple, out_dim: int, what: str) -> Tensor:
    if not isinstance(node.value, list):
        node.fail(f"{what} must be a list of {{args, out}} entries")
    data = {}
    for e in node.value:
        fields = _obj(e, f"{what} entry", ("args", "out"))
        args = fields["args"]
        if not isinstance(args.value, list) or len(args.value) != len(in_dims):
            args.fail(f"{what} entries need {len(in_dims)} argument indices")
        idx = tuple(_int(a, "argument index", 0, d) for a, d in zip(args.value, in_dims))
        outs = _obj(fields["out"], f"{what} output", optional=fields["out"].value
                    if isinstance(fields["out"].value, dict) else ())
        for key, val in outs.items():
            if not re.fullmatch(r"\d+", key) or int(key) >= out_dim:
                val.fail(f"output index {key!r} out of range [0, {out_dim})")
            k = idx + (int(key),)
            if k in data:
                val.fail(f"duplicate entry for args {list(idx)} output {key}")
            c = _scalar(val)
            if c:
                data[k] = c
    return Tensor(in_dims, out_dim, data)


def _twist(fields: dict, dim: int, what: str) -> Matrix:
    if "alpha" in fields:
        return _matrix(fields["alpha"], dim, dim, f"{what} twist")
    return Matrix.identity(dim)


def _dim(fields: dict, what: str) -> int:
    return _int(fields["dim"], f"{what} dimension", 0)


def _ref(ws: Workspace, node: Node, section: str, what: str):
    name = _name(node, what)
    table = getattr(ws, section)
    if name not in table:
        node.fail(f"unknown {what} {name!r}")
    return table[name]


# sections --------------------------------------------------------------------------

def _parse_algebra(name, node):
    f = _obj(node, f"algebra {name!r}", ("dim",), ("bracket", "alpha", "labels"))
    d = _dim(f, name)
    br = _tensor(f["bracket"], (d, d, d), d, "bracket") if "bracket" in f else Tensor.zero((d,) * 3, d)
    labels = ()
    if "labels" in f:
        if not isinstance(f["labels"].value, list) or len(f["labels"].value) != d:
            f["labels"].fail(f"labels must list {d} names")
        labels = tuple(_name(x, "label") for x in f["labels"].value)
    return HomLts(br, _twist(f, d, name), labels, name)


def _parse_lie(name, node):
    f = _obj(node, f"Lie algebra {name!r}", ("dim",), ("bracket", "alpha"))
    d = _dim(f, name)
    br = _tensor(f["bracket"], (d, d), d, "bracket") if "bracket" in f else Tensor.zero((d, d), d)
    return HomLieAlgebra(br, _twist(f, d, name), (), name)


def _parse_action(ws, name, node):
    f = _obj(node, f"action {name!r}", ("algebra", "module", "theta"))
    g = _ref(ws, f["algebra"], "algebras", "algebra")
    h = _ref(ws, f["module"], "algebras", "algebra")
    th = _tensor(f["theta"], (g.dim, g.dim, h.dim), h.dim, "theta")
    return Action(g, h.alpha, th, h, name)


def _parse_lie_action(ws, name, node):
    f = _obj(node, f"Lie action {name!r}", ("algebra", "module", "rho"))
    g = _ref(ws, f["algebra"], "lie_algebras", "Lie algebra")
    h = _ref(ws, f["module"], "lie_algebras", "Lie algebra")
    rho = _tensor(f["rho"], (g.dim, h.dim), h.dim, "rho")
    return LieAction(g, h, rho, name)


def _parse_map(ws, name, node):
    v = node.value if isinstance(node.value, dict) else {}
    what = f"map {name!r}"
    if "action" in v or "lie_action" in v:
        key = "action" if "action" in v else "lie_action"
        f = _obj(node, what, (key, "matrix"), ("kappa",))
        act = _ref(ws, f[key], "actions" if key == "action" else "lie_actions", key.replace("_", " "))
        dg = act.algebra.dim
        dh = act.module.dim
        A = _matrix(f["matrix"], dg, dh, "operator matrix")
        kappa = _scalar(f["kappa"]) if "kappa" in f else Fraction(0)
        if key == "action":
            return WeightedOOperator(act, A, kappa, name)
        return LieOOperator(act, A, kappa, name)
    if "phi_h" in v:
        f = _obj(node, what, ("from", "to", "phi_h", "phi_g"))
        s = _ref(ws, f["from"], "maps", "map")
        t = _ref(ws, f["to"], "maps", "map")
        for n_, m_ in (("from", s), ("to", t)):
            if not isinstance(m_, WeightedOOperator):
                f[n_].fail("operator morphisms connect two triple-system operators")
        ph = _matrix(f["phi_h"], t.source.dim, s.source.dim, "phi_h")
        pg = _matrix(f["phi_g"], t.target.dim, s.target.dim, "phi_g")
        return OperatorMorphism(s, t, ph, pg, name)
    f = _obj(node, what, ("from", "to", "matrix"))
    s = _ref(ws, f["from"], "algebras", "algebra")
    t = _ref(ws, f["to"], "algebras", "algebra")
    return LtsMorphism(s, t, _matrix(f["matrix"], t.dim, s.dim, "morphism matrix"), name)


def _parse_post_lts(name, node):
    f = _obj(node, f"post-Lts {name!r}", ("dim",), ("floor", "curly", "alpha"))
    d = _dim(f, name)
    z = Tensor.zero((d,) * 3, d)
    floor = _tensor(f["floor"], (d,) * 3, d, "floor") if "floor" in f else z
    curly = _tensor(f["curly"], (d,) * 3, d, "curly") if "curly" in f else z
    return HomPostLts(floor, curly, _twist(f, d, name), name)


def _parse_post_lie(name, node):
    f = _obj(node, f"post-Lie algebra {name!r}", ("dim",), ("bracket", "star", "alpha"))
    d = _dim(f, name)
    z = Tensor.zero((d, d), d)
    br = _tensor(f["bracket"], (d, d), d, "bracket") if "bracket" in f else z
    st = _tensor(f["star"], (d, d), d, "star") if "star" in f else z
    return HomPostLieAlgebra(br, st, _twist(f, d, name), name)


def _parse_deformation(ws, name, node):
    f = _obj(node, f"deformation {name!r}", ("map", "terms"))
    op = _ref(ws, f["map"], "maps", "map")
    if not isinstance(op, WeightedOOperator):
        f["map"].fail("deformations are of triple-system operators")
    if not isinstance(f["terms"].value, list):
        f["terms"].fail("terms must be a list of matrices")
    rows, cols = op.A.shape
    terms = [_matrix(t, rows, cols, f"term {k}") for k, t in enumerate(f["terms"].value, 1)]
    return TruncatedDeformation(op, tuple(terms), name)


def parse_workspace(text: str) -> Workspace:
    ws = Workspace()
    root = _located(text)
    if root is None:
        return ws
    top = _obj(root, "workspace", optional=SECTIONS)
    plain = {"algebras": _parse_algebra, "lie_algebras": _parse_lie,
             "post_lts": _parse_post_lts, "post_lie": _parse_post_lie}
    linked = {"actions": _parse_action, "lie_actions": _parse_lie_action,
              "deformations": _parse_deformation}
    for section in SECTIONS:
        if section not in top:
            continue
        node = top[section]
        entries = _obj(node, section, optional=node.value if isinstance(node.value, dict) else ())
        table = getattr(ws, section)
        for name, entry in entries.items():
            try:
                if section in plain:
                    table[name] = plain[section](name, entry)
                elif section == "maps":
                    table[name] = _parse_map(ws, name, entry)
                else:
                    table[name] = linked[section](ws, name, entry)
            except ParseError:
                raise
            except InvalidInput as e:
                entry.fail(str(e))
    return ws


def load_workspace(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


# printing --------------------------------------------------------------------------

class _Inline:
    """Marks a JSON value to be written on a single line."""

    def __init__(self, value):
        self.value = value


def tensor_doc(t: Tensor) -> list:
    grouped = {}
    for k in sorted(t.data):
        grouped.setdefault(k[:-1], {})[str(k[-1])] = format_scalar(t.data[k])
    return [_Inline({"args": list(a), "out": o}) for a, o in grouped.items()]


def matrix_doc(m: Matrix) -> list:
    return [_Inline([format_scalar(x) for x in row]) for row in m.to_rows()]


def _named(obj, table: dict, what: str) -> str:
    for k, v in table.items():
        if v is obj:
            return k
    if obj.name in table:
        return obj.name
    raise InvalidInput(f"{what} {obj.name!r} is not part of the workspace")


def _workspace_doc(ws: Workspace) -> dict:
    doc = {}
    if ws.algebras:
        doc["algebras"] = {}
        for n, g in ws.algebras.items():
            e = {"dim": g.dim, "alpha": matrix_doc(g.alpha), "bracket": tensor_doc(g.bracket)}
            if g.labels:
                e["labels"] = _Inline(list(g.labels))
            doc["algebras"][n] = e
    if ws.lie_algebras:
        doc["lie_algebras"] = {n: {"dim": g.dim, "alpha": matrix_doc(g.alpha),
                                   "bracket": tensor_doc(g.bracket)}
                               for n, g in ws.lie_algebras.items()}
    if ws.actions:
        doc["actions"] = {n: {"algebra": _named(a.algebra, ws.algebras, "algebra"),
                              "module": _named(a.module, ws.algebras, "algebra"),
                              "theta": tensor_doc(a.theta)} for n, a in ws.actions.items()}
    if ws.lie_actions:
        doc["lie_actions"] = {n: {"algebra": _named(a.algebra, ws.lie_algebras, "Lie algebra"),
                                  "module": _named(a.module, ws.lie_algebras, "Lie algebra"),
                                  "rho": tensor_doc(a.rho)} for n, a in ws.lie_actions.items()}
    if ws.maps:
        doc["maps"] = {}
        for n, m in ws.maps.items():
            if isinstance(m, WeightedOOperator):
                e = {"action": _named(m.act, ws.actions, "action"), "matrix": matrix_doc(m.A),
                     "kappa": format_scalar(m.kappa)}
            elif isinstance(m, LieOOperator):
                e = {"lie_action": _named(m.act, ws.lie_actions, "Lie action"),
                     "matrix": matrix_doc(m.A), "kappa": format_scalar(m.kappa)}
            elif isinstance(m, OperatorMorphism):
                e = {"from": _named(m.source, ws.maps, "map"), "to": _named(m.target, ws.maps, "map"),
                     "phi_h": matrix_doc(m.phi_h), "phi_g": matrix_doc(m.phi_g)}
            else:
                e = {"from": _named(m.source, ws.algebras, "algebra"),
                     "to": _named(m.target, ws.algebras, "algebra"), "matrix": matrix_doc(m.matrix)}
            doc["maps"][n] = e
    if ws.post_lts:
        doc["post_lts"] = {n: {"dim": p.alpha.rows, "alpha": matrix_doc(p.alpha),
                               "floor": tensor_doc(p.floor), "curly": tensor_doc(p.curly)}
                           for n, p in ws.post_lts.items()}
    if ws.post_lie:
        doc["post_lie"] = {n: {"dim": p.dim, "alpha": matrix_doc(p.alpha),
                               "bracket": tensor_doc(p.bracket), "star": tensor_doc(p.star)}
                           for n, p in ws.post_lie.items()}
    if ws.deformations:
        doc["deformations"] = {n: {"map": _named(d.op, ws.maps, "map"),
                                   "terms": [matrix_doc(t) for t in d.terms]}
                               for n, d in ws.deformations.items()}
    return doc


def _emit(value, indent: int, out: list):
    pad = "  " * indent
    if isinstance(value, _Inline):
        out.append(json.dumps(_plain(value.value), ensure_ascii=False))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = list(value.items())
        for i, (k, v) in enumerate(items):
            out.append(f"{pad}  {json.dumps(k, ensure_ascii=False)}: ")
            _emit(v, indent + 1, out)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(value, list):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(value):
            out.append(pad + "  ")
            _emit(v, indent + 1, out)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(pad + "]")
    else:
        out.append(json.dumps(value, ensure_ascii=False))


def _plain(value):
    if isinstance(value, _Inline):
        return _plain(value.value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_plain(v) for v in value]
    return value


def dumps(value) -> str:
    """JSON text with tensor entries and matrix rows kept on one line."""
    out = []
    _emit(value, 0, out)
    return "".join(out) + "\n"


def print_workspace(ws: Workspace) -> str:
    return dumps(_workspace_doc(ws))
