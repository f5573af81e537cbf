"""Hom-Lie algebras and Hom-post-Lie algebras, and the passage to triple systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Matrix, Tensor, ap
from .lts import HomLts
from .postlts import HomPostLts, adjacent_lts
from .ooperator import WeightedOOperator
from .rep import Action
from .report import InvalidInput, ViolationReport


@dataclass(frozen=True, eq=False)
class HomLieAlgebra:
    """``bracket[(i, j, l)]`` is the ``e_l`` coefficient of ``[e_i, e_j]``."""

    bracket: Tensor
    alpha: Matrix
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        d = self.alpha.rows
        if self.alpha.cols != d:
            raise InvalidInput("twist map must be square")
        if self.bracket.in_dims != (d, d) or self.bracket.out_dim != d:
            raise InvalidInput(f"bracket shape {self.bracket.in_dims}->{self.bracket.out_dim} "
                               f"does not match twist of dimension {d}")

    @property
    def dim(self) -> int:
        return self.alpha.rows

    @classmethod
    def from_entries(cls, dim, entries, alpha=None, **kw) -> "HomLieAlgebra":
        alpha = Matrix.identity(dim) if alpha is None else alpha
        return cls(Tensor((dim, dim), dim, {k: Fraction(v) for k, v in entries.items()}), alpha, **kw)

    def same_structure(self, other) -> bool:
        return self.bracket == other.bracket and self.alpha == other.alpha


def _lie_axioms(r: ViolationReport, B: Tensor, al: Matrix, prefix: str = ""):
    r.vanishes(prefix + "skew", (ap(B, "x", "y") + ap(B, "y", "x")).over("xy"))
    r.compare(prefix + "multiplicativity", ap(al, ap(B, "x", "y")).over("xy"),
              ap(B, ap(al, "x"), ap(al, "y")).over("xy"))
    jac = (ap(B, ap(B, "x", "y"), ap(al, "z")) + ap(B, ap(B, "y", "z"), ap(al, "x"))
           + ap(B, ap(B, "z", "x"), ap(al, "y")))
    r.vanishes(prefix + "hom-jacobi", jac.over("xyz"))


def check_hom_lie(g: HomLieAlgebra, subject: str = "") -> ViolationReport:
    r = ViolationReport(subject or (g.name or "hom-lie"))
    _lie_axioms(r, g.bracket, g.alpha)
    return r


def _require(report: ViolationReport, what: str):
    if not report.passed:
        raise InvalidInput(f"{what} fails its axioms:\n" + report.summary(5))


def lts_from_hom_lie(g: HomLieAlgebra, verify: bool = True, same_twist: bool = False) -> HomLts:
    """``[x, y, z] = [[x, y], alpha z]`` with twist ``alpha^2``.

    Keeping ``alpha`` itself as the twist (``same_twist=True``) only gives a
    Hom-Lts when the fundamental identity happens to survive; for a Yau twist
    ``alpha [.,.]`` of a Lie algebra the bracket is ``alpha^2 [[x,y],z]``, which
    is the Yau twist of the triple system by ``alpha^2``.
    """
    if verify:
        _require(check_hom_lie(g), g.name or "Hom-Lie algebra")
    B = g.bracket
    t = ap(B, ap(B, "x", "y"), ap(g.alpha, "z")).over("xyz")
    return HomLts(t, g.alpha if same_twist else g.alpha @ g.alpha, g.labels, g.name)


@dataclass(frozen=True, eq=False)
class LieAction:
    """``rho[(i, k, l)]``: the ``f_l`` coefficient of ``rho(e_i) f_k``."""

    algebra: HomLieAlgebra
    module: HomLieAlgebra
    rho: Tensor
    name: str = ""

    def __post_init__(self):
        dg, dh = self.algebra.dim, self.module.dim
        if self.rho.in_dims != (dg, dh) or self.rho.out_dim != dh:
            raise InvalidInput(f"rho shape {self.rho.in_dims}->{self.rho.out_dim} does not match "
                               f"algebra dim {dg} and module dim {dh}")


def check_lie_action(act: LieAction, subject: str = "") -> ViolationReport:
    """Representation identities for ``rho`` and the two action identities."""
    ag, ah = act.algebra.alpha, act.module.alpha
    Bg, Bh, rho = act.algebra.bracket, act.module.bracket, act.rho
    r = ViolationReport(subject or (act.name or "lie action"))
    r.compare("rho twist", ap(rho, ap(ag, "x"), ap(ah, "u")).over("xu"),
              ap(ah, ap(rho, "x", "u")).over("xu"))
    r.compare("rho bracket", ap(rho, ap(Bg, "x", "y"), ap(ah, "u")).over("xyu"),
              (ap(rho, ap(ag, "x"), ap(rho, "y", "u")) - ap(rho, ap(ag, "y"), ap(rho, "x", "u"))).over("xyu"))
    r.compare("rho derivation", ap(rho, ap(ag, "x"), ap(Bh, "u", "v")).over("xuv"),
              (ap(Bh, ap(rho, "x", "u"), ap(ah, "v")) + ap(Bh, ap(ah, "u"), ap(rho, "x", "v"))).over("xuv"))
    r.vanishes("rho vanishing", ap(Bh, ap(rho, "x", "u"), ap(ah, "v")).over("xuv"))
    return r


def theta_from_rho(act: LieAction, verify: bool = True) -> Action:
    """``theta(x, y) = rho(alpha_g y) rho(x)`` on the induced triple systems."""
    if verify:
        _require(check_lie_action(act), act.name or "Lie action")
    rho, ag = act.rho, act.algebra.alpha
    t = ap(rho, ap(ag, "y"), ap(rho, "x", "u")).over("xyu")
    g = lts_from_hom_lie(act.algebra, verify)
    h = lts_from_hom_lie(act.module, verify)
    return Action(g, h.alpha, t, h, f"theta({act.name})" if act.name else "theta_rho")


def lts_operator_from_lie(A: Matrix, act: LieAction, kappa, verify: bool = True) -> WeightedOOperator:
    """The triple-system operator carried by a Lie-level one: same map, weight ``kappa^2``.

    Expanding ``[[Au,Av],alpha Aw]`` leaves ``kappa^2 A[[u,v],alpha w]`` once the
    cross terms ``kappa [rho(x)u, alpha v]`` vanish by the action axioms.
    """
    kappa = Fraction(kappa)
    return WeightedOOperator(theta_from_rho(act, verify), A, kappa * kappa, "A")


def lie_descent_bracket(A: Matrix, act: LieAction, kappa) -> Tensor:
    """``[u, v]_A = rho(Au) v - rho(Av) u + kappa [u, v]_h``."""
    rho = act.rho
    t = (ap(rho, ap(A, "u"), "v") - ap(rho, ap(A, "v"), "u")).over("uv")
    return t + act.module.bracket.scale(Fraction(kappa))


def check_lie_o_operator(A: Matrix, act: LieAction, kappa, subject: str = "",
                         verify_action: bool = True) -> ViolationReport:
    if verify_action:
        _require(check_lie_action(act), act.name or "Lie action")
    g, h = act.algebra, act.module
    if A.shape != (g.dim, h.dim):
        raise InvalidInput(f"operator matrix has shape {A.shape}, expected {(g.dim, h.dim)}")
    r = ViolationReport(subject or "lie o-operator")
    r.compare("operator twist", ap(A, ap(h.alpha, "u")).over("u"), ap(g.alpha, ap(A, "u")).over("u"))
    r.compare("operator identity", ap(g.bracket, ap(A, "u"), ap(A, "v")).over("uv"),
              lie_descent_bracket(A, act, kappa).then(A))
    return r


@dataclass(frozen=True, eq=False)
class HomPostLieAlgebra:
    bracket: Tensor
    star: Tensor
    alpha: Matrix
    name: str = ""

    def __post_init__(self):
        d = self.alpha.rows
        for what, t in (("bracket", self.bracket), ("star product", self.star)):
            if t.in_dims != (d, d) or t.out_dim != d:
                raise InvalidInput(f"{what} shape {t.in_dims}->{t.out_dim} does not match dimension {d}")

    @property
    def dim(self) -> int:
        return self.alpha.rows


def check_post_lie(p: HomPostLieAlgebra, subject: str = "") -> ViolationReport:
    B, S, al = p.bracket, p.star, p.alpha
    r = ViolationReport(subject or (p.name or "hom-post-lie"))
    _lie_axioms(r, B, al, "bracket ")
    r.compare("star multiplicativity", ap(al, ap(S, "u", "v")).over("uv"),
              ap(S, ap(al, "u"), ap(al, "v")).over("uv"))
    lhs = ap(S, ap(al, "u"), ap(B, "v", "w")).over("uvw")
    r.compare("star derivation", lhs,
              (ap(B, ap(S, "u", "v"), ap(al, "w")) + ap(B, ap(al, "v"), ap(S, "u", "w"))).over("uvw"))
    r.compare("star associator",
              (ap(S, ap(B, "u", "v") + ap(S, "u", "v") - ap(S, "v", "u"), ap(al, "w"))).over("uvw"),
              (ap(S, ap(al, "u"), ap(S, "v", "w")) - ap(S, ap(al, "v"), ap(S, "u", "w"))).over("uvw"))
    r.vanishes("star kills bracket", lhs)
    r.vanishes("bracket kills star", ap(B, ap(S, "u", "v"), ap(al, "w")).over("uvw"))
    return r


def adjacent_hom_lie(p: HomPostLieAlgebra, verify: bool = True) -> HomLieAlgebra:
    """``[u, v]_C = u * v - v * u + [u, v]``."""
    if verify:
        _require(check_post_lie(p), p.name or "Hom-post-Lie algebra")
    t = p.star - p.star.reorder((1, 0)) + p.bracket
    return HomLieAlgebra(t, p.alpha, (), f"{p.name}_C" if p.name else "")


def post_lie_from_o(A: Matrix, act: LieAction, kappa, verify: bool = True):
    """Returns ``(post-Lie algebra, descent Hom-Lie algebra, action of the descent on h)``."""
    kappa = Fraction(kappa)
    if verify:
        _require(check_lie_o_operator(A, act, kappa), "Lie O-operator")
    h = act.module
    star = ap(act.rho, ap(A, "u"), "v").over("uv")
    post = HomPostLieAlgebra(h.bracket.scale(kappa), star, h.alpha)
    descent = HomLieAlgebra(lie_descent_bracket(A, act, kappa), h.alpha, h.labels,
                            f"{h.name}_A" if h.name else "")
    ad = LieAction(descent, h, star, "ad")
    if verify:
        _require(check_post_lie(post), "induced Hom-post-Lie algebra")
        _require(check_hom_lie(descent), "descent Hom-Lie algebra")
        m = ViolationReport("descent morphism")
        m.compare("operator twist", ap(A, ap(h.alpha, "u")).over("u"),
                  ap(act.algebra.alpha, ap(A, "u")).over("u"))
        m.compare("bracket intertwining", descent.bracket.then(A),
                  ap(act.algebra.bracket, ap(A, "u"), ap(A, "v")).over("uv"))
        _require(m, "descent morphism")
        _require(check_lie_action(ad), "induced action")
    return post, descent, ad


def post_lts_from_post_lie(p: HomPostLieAlgebra, verify: bool = True) -> HomPostLts:
    """``floor(u,v,w) = [[u,v], alpha w]`` and ``{u,v,w} = alpha(w) * (v * u)``, twist ``alpha^2``."""
    if verify:
        _require(check_post_lie(p), p.name or "Hom-post-Lie algebra")
    B, S, al = p.bracket, p.star, p.alpha
    floor = ap(B, ap(B, "u", "v"), ap(al, "w")).over("uvw")
    curly = ap(S, ap(al, "w"), ap(S, "v", "u")).over("uvw")
    return HomPostLts(floor, curly, al @ al, p.name)


@dataclass(frozen=True)
class DiagramResult:
    commutes: bool
    witnesses: tuple
    via_triple: Tensor
    via_lie: Tensor
    actions_agree: bool | None = None


def diagram_check(p: HomPostLieAlgebra, verify: bool = True) -> DiagramResult:
    """Compare ``adjacent_lts(post_lts_from_post_lie(p))`` with
    ``lts_from_hom_lie(adjacent_hom_lie(p))`` entry by entry.

    As extra information, the action of the adjacent triple system on the floor
    bracket is compared with ``theta_from_rho`` of the star action.
    """
    from .exact import witnesses
    from .postlts import r_action

    pl = post_lts_from_post_lie(p, verify)
    top = adjacent_lts(pl, verify=False).bracket
    adj = adjacent_hom_lie(p, verify)
    side = lts_from_hom_lie(adj, verify=False).bracket
    w = tuple(witnesses(top, side))
    agree = None
    try:
        star_act = LieAction(adj, HomLieAlgebra(p.bracket, p.alpha), p.star)
        th = theta_from_rho(star_act, verify=False).theta
        agree = th == r_action(pl, verify=False).theta
    except InvalidInput:
        agree = None
    return DiagramResult(not w, w, top, side, agree)
