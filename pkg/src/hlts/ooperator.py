"""Weighted O-operators between Hom-Lts and their graph/Nijenhuis descriptions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exact import Matrix, Tensor, ap, rank
from .lts import HomLts, check_hom_lts, check_lts_morphism, semidirect_product
from .rep import Action
from .report import InvalidInput, ViolationReport


@dataclass(frozen=True, eq=False)
class WeightedOOperator:
    """``A: h -> g`` with weight ``kappa`` relative to an action of ``g`` on ``h``."""

    act: Action
    A: Matrix
    kappa: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        want = (self.target.dim, self.source.dim)
        if self.A.shape != want:
            raise InvalidInput(f"operator matrix has shape {self.A.shape}, expected {want}")

    @property
    def source(self) -> HomLts:
        return self.act.module

    @property
    def target(self) -> HomLts:
        return self.act.algebra

    def with_kappa(self, kappa) -> "WeightedOOperator":
        return WeightedOOperator(self.act, self.A, kappa, self.name)

    def with_matrix(self, A: Matrix) -> "WeightedOOperator":
        return WeightedOOperator(self.act, A, self.kappa, self.name)

    @cached_property
    def descent_bracket(self) -> Tensor:
        """``{u,v,w} = D(Au,Av)w - theta(Au,Aw)v + theta(Av,Aw)u + kappa [u,v,w]_h``."""
        A, th, D = self.A, self.act.theta, self.act.d
        t = (ap(D, ap(A, "u"), ap(A, "v"), "w")
             - ap(th, ap(A, "u"), ap(A, "w"), "v")
             + ap(th, ap(A, "v"), ap(A, "w"), "u"))
        out = t.over("uvw")
        if self.kappa:
            out = out + self.source.bracket.scale(self.kappa)
        return out

    @cached_property
    def report(self) -> ViolationReport:
        return check_o_operator(self)


def _require_action(act: Action):
    r = act.report
    if not r.passed:
        raise InvalidInput("the action fails its axioms:\n" + r.summary(5))


def check_o_operator(op: WeightedOOperator, subject: str = "", verify_action: bool = True) -> ViolationReport:
    if verify_action:
        _require_action(op.act)
    g, h, A = op.target, op.source, op.A
    r = ViolationReport(subject or (op.name or "o-operator"))
    r.compare("operator twist", ap(A, ap(h.alpha, "u")).over("u"), ap(g.alpha, ap(A, "u")).over("u"))
    lhs = ap(g.bracket, ap(A, "u"), ap(A, "v"), ap(A, "w")).over("uvw")
    rhs = op.descent_bracket.then(A)
    r.compare("operator identity", lhs, rhs)
    return r


def check_o_homomorphism(op1: WeightedOOperator, op2: WeightedOOperator,
                         phi_h: Matrix, phi_g: Matrix, subject: str = "") -> ViolationReport:
    """Both maps are Hom-Lts morphisms, ``phi_g A1 = A2 phi_h`` and ``phi_h`` intertwines
    theta (and hence D)."""
    for op in (op1, op2):
        if not op.report.passed:
            raise InvalidInput(f"{op.name or 'operator'} is not a weighted O-operator:\n"
                               + op.report.summary(5))
    g, h = op1.target, op1.source
    if not (g.same_structure(op2.target) and h.same_structure(op2.source)
            and op1.act.theta == op2.act.theta and op1.kappa == op2.kappa):
        raise InvalidInput("homomorphisms need operators sharing g, h, theta and kappa")
    r = ViolationReport(subject or "o-operator homomorphism")
    r.extend(check_lts_morphism(h, h, phi_h), "phi_h ")
    r.extend(check_lts_morphism(g, g, phi_g), "phi_g ")
    r.compare("operator intertwining", ap(phi_g, ap(op1.A, "u")).over("u"), ap(op2.A, ap(phi_h, "u")).over("u"))
    for tag, t, derived in (("theta intertwining", op1.act.theta, False), ("D intertwining", op1.act.d, True)):
        r.compare(tag, ap(phi_h, ap(t, "x", "y", "u")).over("xyu"),
                  ap(t, ap(phi_g, "x"), ap(phi_g, "y"), ap(phi_h, "u")).over("xyu"), derived)
    return r


def semidirect(op: WeightedOOperator, verify: bool = True) -> HomLts:
    return semidirect_product(op.target, op.source, op.act, op.kappa, verify)


def graph_matrix(op: WeightedOOperator) -> Matrix:
    """Columns ``A e_i + e_i`` in ``g + h`` coordinates."""
    dg, dh = op.target.dim, op.source.dim
    cols = []
    for i in range(dh):
        cols.append([op.A[r, i] for r in range(dg)] + [Fraction(int(r == i)) for r in range(dh)])
    return Matrix.from_columns(cols, dg + dh)


def graph_is_subalgebra(op: WeightedOOperator, verify: bool = True) -> bool:
    """Closure of ``{Au + u}`` under the semidirect bracket and twist, decided by rank."""
    s = semidirect(op, verify)
    G = graph_matrix(op)
    cols = [G.column(i) for i in range(G.cols)]
    base = rank(cols, G.rows) if cols else 0
    images = [s.alpha @ c for c in cols]
    n = len(cols)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                images.append(s.bracket(cols[i], cols[j], cols[k]))
    images = [v for v in images if any(v)]
    if not images:
        return True
    return rank(cols + images, G.rows) == base


def descent_lts(op: WeightedOOperator, verify: bool = True) -> HomLts:
    """``(h, {,,}_A, alpha_h)``; with ``verify`` the operator, the result and ``A`` as a
    morphism into ``g`` are all checked."""
    if verify and not op.report.passed:
        raise InvalidInput("not a weighted O-operator:\n" + op.report.summary(5))
    h = op.source
    d = HomLts(op.descent_bracket, h.alpha, h.labels, f"{h.name or 'h'}_A")
    if verify:
        for rep in (check_hom_lts(d), check_lts_morphism(d, op.target, op.A)):
            if not rep.passed:
                raise InvalidInput("descent construction failed:\n" + rep.summary(5))
    return d


def nijenhuis_check(g: HomLts, N: Matrix, subject: str = "") -> ViolationReport:
    if N.shape != (g.dim, g.dim):
        raise InvalidInput(f"operator has shape {N.shape}, expected {(g.dim, g.dim)}")
    B, al = g.bracket, g.alpha
    N2 = N @ N
    N3 = N2 @ N
    r = ViolationReport(subject or "nijenhuis")
    r.compare("commutes with twist", ap(N, ap(al, "x")).over("x"), ap(al, ap(N, "x")).over("x"))
    lhs = ap(B, ap(N, "x"), ap(N, "y"), ap(N, "z"))
    rhs = (ap(N, ap(B, "x", ap(N, "y"), ap(N, "z")) + ap(B, ap(N, "x"), "y", ap(N, "z"))
              + ap(B, ap(N, "x"), ap(N, "y"), "z"))
           - ap(N2, ap(B, ap(N, "x"), "y", "z") + ap(B, "x", ap(N, "y"), "z")
                + ap(B, "x", "y", ap(N, "z")))
           + ap(N3, ap(B, "x", "y", "z")))
    r.compare("nijenhuis identity", lhs.over("xyz"), rhs.over("xyz"))
    return r


def n_from_o(op: WeightedOOperator) -> Matrix:
    """``N_A = [[id, A], [0, 0]]`` on ``g + h``."""
    dg, dh = op.target.dim, op.source.dim
    n = dg + dh
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(dg):
        rows[i][i] = Fraction(1)
        for j in range(dh):
            rows[i][dg + j] = op.A[i, j]
    return Matrix.from_rows(rows, n)
