"""Command-line interface.

Exit status: 0 when every requested check passes or a computation completes,
1 when violations are found, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .bridge import (HomLieAlgebra, HomPostLieAlgebra, adjacent_hom_lie, check_hom_lie,
                     check_lie_action, check_lie_o_operator, check_post_lie, diagram_check,
                     lts_from_hom_lie, post_lie_from_o, post_lts_from_post_lie)
from .cohomology import cohomology_dims
from .deformation import check_n_order, extend, obstruction, obstruction_report
from .exact import RationalParseError, parse_scalar
from .io import (LieOOperator, LtsMorphism, OperatorMorphism, Workspace, load_workspace,
                 print_workspace, tensor_doc)
from .lts import HomLts, check_hom_lts, check_lts_morphism
from .ooperator import WeightedOOperator, check_o_homomorphism, check_o_operator, descent_lts, semidirect
from .postlts import HomPostLts, adjacent_lts, check_post_lts, post_lts_from_o
from .rep import Action, check_action, check_representation
from .report import InvalidInput, ViolationReport

OK, VIOLATIONS, INPUT_ERROR = 0, 1, 2


class Outcome:
    """Collects reports and computed values for one command."""

    def __init__(self, argv):
        self.argv = list(argv)
        self.reports: list[ViolationReport] = []
        self.results: dict = {}
        self.lines: list[str] = []
        self.failed = False

    def add(self, report: ViolationReport):
        self.reports.append(report)
        self.lines.append(report.summary())
        if not report.passed:
            self.failed = True

    @property
    def status(self) -> int:
        return VIOLATIONS if self.failed else OK

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.argv, "status": self.status,
                   "reports": [r.to_json() for r in self.reports], "results": self.results}
            return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _kappa(raw):
    if raw is None:
        return None
    try:
        return parse_scalar(raw)
    except RationalParseError as e:
        raise InvalidInput(f"--kappa: {e}") from None


def _entries(ws: Workspace, sections, names):
    if not names:
        out = [(s, n, e) for s in sections for n, e in getattr(ws, s).items()]
        if not out:
            raise InvalidInput(f"the workspace has no entries in {' or '.join(sections)}")
        return out
    out = []
    for n in names:
        hits = [(s, n, getattr(ws, s)[n]) for s in sections if n in getattr(ws, s)]
        if not hits:
            raise InvalidInput(f"no entry {n!r} in {' or '.join(sections)}")
        out.extend(hits[:1])
    return out


def _with_kappa(m, kappa):
    if kappa is None:
        return m
    if isinstance(m, WeightedOOperator):
        return m.with_kappa(kappa)
    if isinstance(m, LieOOperator):
        return LieOOperator(m.act, m.A, kappa, m.name)
    return m


# check -------------------------------------------------------------------------------

def _check_one(kind, section, name, entry, kappa):
    if kind == "lts":
        return check_hom_lts(entry, name)
    if kind == "lie":
        return check_hom_lie(entry, name)
    if kind == "post-lts":
        return check_post_lts(entry, name)
    if kind == "post-lie":
        return check_post_lie(entry, name)
    if kind in ("rep", "action"):
        if section == "lie_actions":
            return check_lie_action(entry, name)
        return (check_representation if kind == "rep" else check_action)(entry, name)
    if kind == "o-op":
        m = _with_kappa(entry, kappa)
        if isinstance(m, WeightedOOperator):
            return check_o_operator(m, name)
        if isinstance(m, LieOOperator):
            return check_lie_o_operator(m.A, m.act, m.kappa, name)
        raise InvalidInput(f"{name!r} is a morphism, not an operator")
    if kind == "morphism":
        if isinstance(entry, LtsMorphism):
            return check_lts_morphism(entry.source, entry.target, entry.matrix, name)
        if isinstance(entry, OperatorMorphism):
            return check_o_homomorphism(entry.source, entry.target, entry.phi_h, entry.phi_g, name)
        raise InvalidInput(f"{name!r} is an operator, not a morphism")
    raise InvalidInput(f"unknown check {kind!r}")


CHECK_SECTIONS = {
    "lts": ("algebras",), "lie": ("lie_algebras",), "rep": ("actions", "lie_actions"),
    "action": ("actions", "lie_actions"), "o-op": ("maps",), "post-lts": ("post_lts",),
    "post-lie": ("post_lie",), "morphism": ("maps",),
}


def cmd_check(args, out: Outcome):
    ws = load_workspace(args.workspace)
    kappa = _kappa(args.kappa)
    entries = _entries(ws, CHECK_SECTIONS[args.kind], args.names)
    if not args.names and args.kind in ("o-op", "morphism"):
        want = (WeightedOOperator, LieOOperator) if args.kind == "o-op" else (LtsMorphism, OperatorMorphism)
        entries = [e for e in entries if isinstance(e[2], want)]
    for section, name, entry in entries:
        out.add(_check_one(args.kind, section, name, entry, kappa))


# build -------------------------------------------------------------------------------

def cmd_build(args, out: Outcome):
    ws = load_workspace(args.workspace)
    section, entry = ws.find(args.name)
    kappa = _kappa(args.kappa)
    entry = _with_kappa(entry, kappa)
    built = Workspace()
    kind, name = args.kind, args.name
    if kind == "semidirect":
        _need(entry, WeightedOOperator, name)
        built.algebras[f"{name}_semidirect"] = semidirect(entry)
    elif kind == "descent":
        if isinstance(entry, LieOOperator):
            _, desc, _ = post_lie_from_o(entry.A, entry.act, entry.kappa)
            built.lie_algebras[f"{name}_descent"] = desc
        else:
            _need(entry, WeightedOOperator, name)
            built.algebras[f"{name}_descent"] = descent_lts(entry)
    elif kind == "adjacent":
        if isinstance(entry, HomPostLts):
            built.algebras[f"{name}_adjacent"] = adjacent_lts(entry)
        else:
            _need(entry, HomPostLieAlgebra, name)
            built.lie_algebras[f"{name}_adjacent"] = adjacent_hom_lie(entry)
    elif kind == "post-from-o":
        if isinstance(entry, LieOOperator):
            post, _, _ = post_lie_from_o(entry.A, entry.act, entry.kappa)
            built.post_lie[f"{name}_post"] = post
        else:
            _need(entry, WeightedOOperator, name)
            built.post_lts[f"{name}_post"] = post_lts_from_o(entry)
    elif kind == "lts-from-lie":
        _need(entry, HomLieAlgebra, name)
        built.algebras[f"{name}_lts"] = lts_from_hom_lie(entry)
    elif kind == "post-lts-from-post-lie":
        _need(entry, HomPostLieAlgebra, name)
        built.post_lts[f"{name}_lts"] = post_lts_from_post_lie(entry)
    text = print_workspace(built)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.lines.append(f"wrote {args.output}")
    else:
        out.lines.append(text.rstrip("\n"))
    out.results["workspace"] = built.to_doc()


def _need(entry, cls, name):
    if not isinstance(entry, cls):
        raise InvalidInput(f"{name!r} is not a {cls.__name__}")


# cohomology, deformations ----------------------------------------------------------------

def _operator(ws: Workspace, name: str, kappa) -> WeightedOOperator:
    m = _with_kappa(ws.lookup("maps", name), kappa)
    _need(m, WeightedOOperator, name)
    return m


def cmd_cohomology(args, out: Outcome):
    ws = load_workspace(args.workspace)
    op = _operator(ws, args.map, _kappa(args.kappa))
    dims = cohomology_dims(op, args.degree, args.max_degree)
    out.results["cohomology"] = dims.to_json()
    h = "unavailable (singular twist)" if dims.dim_h is None else str(dims.dim_h)
    b = "unavailable" if dims.dim_b is None else str(dims.dim_b)
    out.lines.append(f"degree {dims.degree}: dim C = {dims.dim_cochains}, dim Z = {dims.dim_z}, "
                     f"dim B = {b}, dim H = {h}")


def cmd_deform(args, out: Outcome):
    ws = load_workspace(args.workspace)
    d = ws.lookup("deformations", args.name)
    if args.kappa is not None:
        from .deformation import TruncatedDeformation

        d = TruncatedDeformation(d.op.with_kappa(_kappa(args.kappa)), d.terms, d.name)
    if args.action == "check":
        out.add(check_n_order(d, args.name))
        return
    if args.action == "obstruct":
        obs = obstruction(d)
        out.results["obstruction"] = tensor_doc_plain(obs.tensor)
        out.lines.append(f"Obs^{d.order} has {obs.tensor.nnz()} nonzero entries")
        out.add(obstruction_report(d, obs))
        return
    ext = extend(d)
    out.results["obstruction"] = tensor_doc_plain(ext.obstruction.tensor)
    if ext.extendable:
        out.results["term"] = [[_js(x) for x in row] for row in ext.term.to_rows()]
        out.results["extendable"] = True
        out.lines.append(f"extendable: A_{d.order + 1} =")
        out.lines.extend("  " + " ".join(str(_js(x)) for x in row) for row in ext.term.to_rows())
    else:
        out.results["term"] = None
        out.results["extendable"] = False
        out.lines.append("no extension: [Obs] nonzero in H^2")


def tensor_doc_plain(t):
    return [{"args": e.value["args"], "out": e.value["out"]} for e in tensor_doc(t)]


def _js(x):
    from .exact import format_scalar

    return format_scalar(x)


# bridge, lint, selftest -----------------------------------------------------------------

def cmd_bridge(args, out: Outcome):
    ws = load_workspace(args.workspace)
    section, entry = ws.find(args.name)
    entry = _with_kappa(entry, _kappa(args.kappa))
    if isinstance(entry, LieOOperator):
        entry, _, _ = post_lie_from_o(entry.A, entry.act, entry.kappa)
    _need(entry, HomPostLieAlgebra, args.name)
    res = diagram_check(entry)
    out.results["diagram"] = {
        "commutes": res.commutes,
        "witnesses": [list(w) for w in res.witnesses],
        "actions_agree": res.actions_agree,
        "via_post_lts": tensor_doc_plain(res.via_triple),
        "via_hom_lie": tensor_doc_plain(res.via_lie),
    }
    out.lines.append(f"diagram {'commutes' if res.commutes else 'does not commute'}"
                     + ("" if res.commutes else f" at {len(res.witnesses)} entries"))
    if res.actions_agree is not None:
        out.lines.append(f"actions agree (informational): {res.actions_agree}")
    out.failed = not res.commutes


def _complete(t):
    """Add the skew partner of every entry; returns (tensor, conflicts)."""
    data = dict(t.data)
    conflicts = []
    for k, c in sorted(t.data.items()):
        swapped = list(k)
        swapped[0], swapped[1] = swapped[1], swapped[0]
        swapped = tuple(swapped)
        if swapped == k:
            if c:
                conflicts.append(list(k))
            continue
        if swapped in t.data:
            if t.data[swapped] != -c:
                conflicts.append(list(k))
        else:
            data[swapped] = -c
    from .exact import Tensor

    return Tensor(t.in_dims, t.out_dim, data), conflicts


def cmd_lint(args, out: Outcome):
    ws = load_workspace(args.workspace)
    conflicts = {}
    for n, g in list(ws.algebras.items()):
        t, c = _complete(g.bracket)
        ws.algebras[n] = _rebind(ws, "algebras", n, HomLts(t, g.alpha, g.labels, g.name))
        if c:
            conflicts[f"algebras.{n}"] = c
    for n, g in list(ws.lie_algebras.items()):
        t, c = _complete(g.bracket)
        ws.lie_algebras[n] = _rebind(ws, "lie_algebras", n, HomLieAlgebra(t, g.alpha, g.labels, g.name))
        if c:
            conflicts[f"lie_algebras.{n}"] = c
    for n, p in list(ws.post_lts.items()):
        t, c = _complete(p.floor)
        ws.post_lts[n] = HomPostLts(t, p.curly, p.alpha, p.name)
        if c:
            conflicts[f"post_lts.{n}"] = c
    for n, p in list(ws.post_lie.items()):
        t, c = _complete(p.bracket)
        ws.post_lie[n] = HomPostLieAlgebra(t, p.star, p.alpha, p.name)
        if c:
            conflicts[f"post_lie.{n}"] = c
    text = print_workspace(ws)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.lines.append(f"wrote {args.output}")
    else:
        out.lines.append(text.rstrip("\n"))
    out.results["workspace"] = ws.to_doc()
    out.results["conflicts"] = conflicts
    for where, ks in conflicts.items():
        out.lines.append(f"conflict in {where}: entries {ks} are not skew")
    out.failed = bool(conflicts)


def _rebind(ws: Workspace, section: str, name: str, new):
    """Replace an algebra and every object that refers to it."""
    old = getattr(ws, section)[name]
    if section == "algebras":
        for an, a in list(ws.actions.items()):
            if a.algebra is old or a.module is old:
                g = new if a.algebra is old else a.algebra
                h = new if a.module is old else a.module
                ws.actions[an] = _rebind_action(ws, a, Action(g, h.alpha, a.theta, h, a.name))
        for mn, m in list(ws.maps.items()):
            if isinstance(m, LtsMorphism) and (m.source is old or m.target is old):
                ws.maps[mn] = LtsMorphism(new if m.source is old else m.source,
                                          new if m.target is old else m.target, m.matrix, m.name)
    else:
        from .bridge import LieAction

        for an, a in list(ws.lie_actions.items()):
            if a.algebra is old or a.module is old:
                na = LieAction(new if a.algebra is old else a.algebra,
                               new if a.module is old else a.module, a.rho, a.name)
                ws.lie_actions[an] = na
                for mn, m in list(ws.maps.items()):
                    if isinstance(m, LieOOperator) and m.act is a:
                        ws.maps[mn] = LieOOperator(na, m.A, m.kappa, m.name)
    return new


def _rebind_action(ws: Workspace, old, new):
    from .deformation import TruncatedDeformation

    for mn, m in list(ws.maps.items()):
        if isinstance(m, WeightedOOperator) and m.act is old:
            nm = WeightedOOperator(new, m.A, m.kappa, m.name)
            ws.maps[mn] = nm
            for dn, d in list(ws.deformations.items()):
                if d.op is m:
                    ws.deformations[dn] = TruncatedDeformation(nm, d.terms, d.name)
            for on, o in list(ws.maps.items()):
                if isinstance(o, OperatorMorphism) and (o.source is m or o.target is m):
                    ws.maps[on] = OperatorMorphism(nm if o.source is m else o.source,
                                                   nm if o.target is m else o.target,
                                                   o.phi_h, o.phi_g, o.name)
    return new


def cmd_selftest(args, out: Outcome):
    """The fixture checks plus a small seeded sample of random operators."""
    from .ooperator import graph_is_subalgebra, n_from_o, nijenhuis_check
    from .samples import e4_operator, random_o_instance

    for kappa in (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 5)):
        op = e4_operator(kappa)
        if kappa == 0:
            out.add(check_hom_lts(op.target, "E4"))
            out.add(check_action(op.act, "E4 adjoint action"))
        out.add(check_o_operator(op, f"E4 operator, kappa={kappa}"))
    rng = random.Random(args.seed if args.seed is not None else 0)
    agree = 0
    count = 24
    for _ in range(count):
        op = random_o_instance(rng, 3)
        v = op.report.passed
        if graph_is_subalgebra(op) == v == nijenhuis_check(semidirect(op), n_from_o(op)).passed:
            agree += 1
    out.results["random_agreement"] = {"sampled": count, "agree": agree}
    out.lines.append(f"graph and Nijenhuis criteria agree with the operator check on {agree}/{count} samples")
    out.failed = out.failed or agree != count


# argument parsing -------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--kappa", help="override the weight of an operator (integer or p/q)")
    common.add_argument("--max-degree", type=int, default=None, help="cochain degree cap")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized suites")

    p = argparse.ArgumentParser(prog="hlts", description="Exact checks for Hom-Lie triple systems "
                                "and weighted O-operators.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify axioms with witnesses")
    c.add_argument("kind", choices=sorted(CHECK_SECTIONS))
    c.add_argument("workspace")
    c.add_argument("names", nargs="*")
    c.set_defaults(fn=cmd_check)

    b = sub.add_parser("build", parents=[common], help="construct a derived structure")
    b.add_argument("kind", choices=("semidirect", "descent", "adjacent", "post-from-o",
                                    "lts-from-lie", "post-lts-from-post-lie"))
    b.add_argument("workspace")
    b.add_argument("name")
    b.add_argument("-o", "--output")
    b.set_defaults(fn=cmd_build)

    h = sub.add_parser("cohomology", parents=[common], help="cohomology dimensions of an operator")
    h.add_argument("workspace")
    h.add_argument("map")
    h.add_argument("--degree", type=int, required=True)
    h.set_defaults(fn=cmd_cohomology)

    d = sub.add_parser("deform", parents=[common], help="truncated deformations")
    d.add_argument("action", choices=("check", "obstruct", "extend"))
    d.add_argument("workspace")
    d.add_argument("name")
    d.set_defaults(fn=cmd_deform)

    br = sub.add_parser("bridge", parents=[common], help="Hom-Lie / Hom-Lts comparisons")
    br.add_argument("what", choices=("diagram",))
    br.add_argument("workspace")
    br.add_argument("name")
    br.set_defaults(fn=cmd_bridge)

    li = sub.add_parser("lint", parents=[common], help="explicit input transformations")
    li.add_argument("what", choices=("complete-skew",))
    li.add_argument("workspace")
    li.add_argument("-o", "--output")
    li.set_defaults(fn=cmd_lint)

    st = sub.add_parser("selftest", parents=[common], help="fixture and random sanity checks")
    st.set_defaults(fn=cmd_selftest)
    return p


def run(argv) -> tuple[int, str]:
    """Run a command; returns ``(exit status, stdout text)``."""
    parser = _parser()
    args = parser.parse_args(argv)
    out = Outcome(argv)
    try:
        args.fn(args, out)
    except (InvalidInput, OSError) as e:
        msg = str(e) if not isinstance(e, OSError) else f"{e.strerror}: {e.filename}"
        if args.format == "json":
            doc = {"command": list(argv), "status": INPUT_ERROR, "error": msg}
            return INPUT_ERROR, json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        return INPUT_ERROR, f"error: {msg}\n"
    return out.status, out.render(args.format)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    status, text = run(argv)
    stream = sys.stderr if status == INPUT_ERROR and not text.startswith("{") else sys.stdout
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
