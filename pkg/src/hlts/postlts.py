"""Hom-post-Lie triple systems."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Matrix, Tensor, ap
from .lts import HomLts, check_hom_lts
from .ooperator import WeightedOOperator, check_o_operator
from .rep import Action
from .report import InvalidInput, ViolationReport, require_cap


@dataclass(frozen=True, eq=False)
class HomPostLts:
    """``floor`` is a Hom-Lts bracket and ``curly`` the second trilinear product."""

    floor: Tensor
    curly: Tensor
    alpha: Matrix
    name: str = ""

    def __post_init__(self):
        d = self.alpha.rows
        if self.alpha.cols != d:
            raise InvalidInput("twist map must be square")
        for what, t in (("floor bracket", self.floor), ("curly product", self.curly)):
            if t.in_dims != (d, d, d) or t.out_dim != d:
                raise InvalidInput(f"{what} shape {t.in_dims}->{t.out_dim} does not match dimension {d}")

    @property
    def dim(self) -> int:
        return self.alpha.rows

    def floor_lts(self) -> HomLts:
        return HomLts(self.floor, self.alpha, (), self.name)


def d_product(curly: Tensor) -> Tensor:
    """``{u,v,w}_D = {w,v,u} - {w,u,v}``."""
    return (ap(curly, "w", "v", "u") - ap(curly, "w", "u", "v")).over("uvw")


def derived_products(p: HomPostLts):
    """``(<,,>_C, {,,}_D)`` with ``<u,v,w>_C = {u,v,w}_D + {u,v,w} - {v,u,w} + floor(u,v,w)``."""
    D = d_product(p.curly)
    C = D + p.curly - ap(p.curly, "v", "u", "w").over("uvw") + p.floor
    return C, D


def check_post_lts(p: HomPostLts, subject: str = "") -> ViolationReport:
    require_cap(p.dim, "post-Lts identities")
    r = ViolationReport(subject or (p.name or "hom-post-lts"))
    r.extend(check_hom_lts(p.floor_lts()), "floor ")
    S, F, al = p.curly, p.floor, p.alpha
    C, D = derived_products(p)
    r.compare("curly multiplicativity", ap(al, ap(S, "u", "v", "w")).over("uvw"),
              ap(S, ap(al, "u"), ap(al, "v"), ap(al, "w")).over("uvw"))
    a = lambda x: ap(al, x)
    order = ("u", "v", "w", "s", "t")
    lhs = ap(S, a("u"), a("v"), ap(C, "w", "s", "t"))
    rhs = (ap(S, ap(S, "u", "v", "w"), a("s"), a("t"))
           - ap(S, ap(S, "u", "v", "s"), a("w"), a("t"))
           + ap(D, a("w"), a("s"), ap(S, "u", "v", "t")))
    r.compare("curly C identity", lhs.over(order), rhs.over(order))
    lhs = ap(D, a("u"), a("v"), ap(S, "w", "s", "t"))
    rhs = (ap(S, ap(D, "u", "v", "w"), a("s"), a("t"))
           + ap(S, a("w"), ap(C, "u", "v", "s"), a("t"))
           + ap(S, a("w"), a("s"), ap(C, "u", "v", "t")))
    r.compare("curly D identity", lhs.over(order), rhs.over(order))
    r.vanishes("curly kills floor", ap(S, ap(F, "w", "s", "t"), a("u"), a("v")).over(order))
    r.vanishes("floor kills curly", ap(F, a("s"), a("t"), ap(S, "w", "u", "v")).over(order))
    return r


def _require(p: HomPostLts):
    r = check_post_lts(p)
    if not r.passed:
        raise InvalidInput("not a Hom-post-Lie triple system:\n" + r.summary(5))


def adjacent_lts(p: HomPostLts, verify: bool = True) -> HomLts:
    if verify:
        _require(p)
    C, _ = derived_products(p)
    return HomLts(C, p.alpha, (), f"{p.name}_C" if p.name else "")


def r_action(p: HomPostLts, verify: bool = True) -> Action:
    """``theta(u, v) w = {w, u, v}``: an action of the adjacent Hom-Lts on the floor Hom-Lts."""
    if verify:
        _require(p)
    theta = ap(p.curly, "w", "u", "v").over("uvw")
    return Action(adjacent_lts(p, False), p.alpha, theta, p.floor_lts(), "R")


def identity_operator(p: HomPostLts, kappa, verify: bool = True) -> WeightedOOperator:
    return WeightedOOperator(r_action(p, verify), Matrix.identity(p.dim), kappa, "id")


def identity_is_o_operator(p: HomPostLts, kappa, verify: bool = True) -> bool:
    """Whether ``id`` is a ``kappa``-weighted O-operator from the floor Hom-Lts to the
    adjacent one, relative to :func:`r_action`."""
    op = identity_operator(p, kappa, verify)
    return check_o_operator(op, verify_action=verify).passed


def post_lts_from_o(op: WeightedOOperator, verify: bool = True) -> HomPostLts:
    """``floor = kappa [u,v,w]_h`` and ``{u,v,w} = theta(Av, Aw) u``."""
    if verify and not op.report.passed:
        raise InvalidInput("not a weighted O-operator:\n" + op.report.summary(5))
    h = op.source
    curly = ap(op.act.theta, ap(op.A, "v"), ap(op.A, "w"), "u").over("uvw")
    p = HomPostLts(h.bracket.scale(op.kappa), curly, h.alpha, f"{h.name}_post" if h.name else "")
    if verify:
        _require(p)
    return p


def check_post_lts_morphism(p1: HomPostLts, p2: HomPostLts, phi: Matrix,
                            subject: str = "") -> ViolationReport:
    if phi.shape != (p2.dim, p1.dim):
        raise InvalidInput(f"morphism matrix has shape {phi.shape}, expected {(p2.dim, p1.dim)}")
    r = ViolationReport(subject or "post-lts morphism")
    r.compare("twist intertwining", ap(phi, ap(p1.alpha, "x")).over("x"),
              ap(p2.alpha, ap(phi, "x")).over("x"))
    for tag, t1, t2 in (("floor intertwining", p1.floor, p2.floor),
                        ("curly intertwining", p1.curly, p2.curly)):
        r.compare(tag, ap(phi, ap(t1, "x", "y", "z")).over("xyz"),
                  ap(t2, ap(phi, "x"), ap(phi, "y"), ap(phi, "z")).over("xyz"))
    return r
