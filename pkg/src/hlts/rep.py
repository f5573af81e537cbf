"""Representations of a Hom-Lts and actions on another Hom-Lts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exact import Matrix, Tensor, ap
from .lts import HomLts, _vec, check_hom_lts, const
from .report import InvalidInput, ViolationReport


def d_tensor(theta: Tensor) -> Tensor:
    """``D(x, y) = theta(y, x) - theta(x, y)`` as a tensor in ``(x, y, u)``."""
    return ap(theta, "y", "x", "u").over("xyu") - theta


@dataclass(frozen=True, eq=False)
class Representation:
    """``theta(e_i, e_j) f_k`` has ``f_l`` coefficient ``theta[(i, j, k, l)]``."""

    algebra: HomLts
    beta: Matrix
    theta: Tensor

    def __post_init__(self):
        d, m = self.algebra.dim, self.beta.rows
        if self.beta.cols != m:
            raise InvalidInput("module twist must be square")
        if self.theta.in_dims != (d, d, m) or self.theta.out_dim != m:
            raise InvalidInput(f"theta shape {self.theta.in_dims}->{self.theta.out_dim} "
                               f"does not match algebra dim {d} and module dim {m}")

    @property
    def module_dim(self) -> int:
        return self.beta.rows

    @cached_property
    def d(self) -> Tensor:
        return d_tensor(self.theta)


@dataclass(frozen=True, eq=False)
class Action(Representation):
    """A representation whose module is the Hom-Lts ``module`` (twist = its alpha)."""

    module: HomLts = None
    name: str = ""

    def __post_init__(self):
        super().__post_init__()
        if self.module is None:
            raise InvalidInput("an action needs a module Hom-Lts")
        if self.module.alpha != self.beta:
            raise InvalidInput("the module twist of an action must be the module's alpha")

    @classmethod
    def build(cls, g: HomLts, h: HomLts, theta: Tensor, name: str = "") -> "Action":
        return cls(g, h.alpha, theta, h, name)

    @cached_property
    def report(self) -> ViolationReport:
        return check_action(self)

    def as_representation(self) -> Representation:
        return Representation(self.algebra, self.beta, self.theta)


def theta_operator(rep: Representation, x, y) -> Matrix:
    n = rep.algebra.dim
    t = rep.theta.compose(0, const(_vec(x, n))).compose(0, const(_vec(y, n)))
    return t.to_matrix()


def d_operator(rep: Representation, x, y) -> Matrix:
    """Matrix of ``D(x, y) = theta(y, x) - theta(x, y)`` on the module."""
    return theta_operator(rep, y, x) - theta_operator(rep, x, y)


def check_representation(rep: Representation, subject: str = "") -> ViolationReport:
    g = rep.algebra
    al, be, th, D, B = g.alpha, rep.beta, rep.theta, rep.d, g.bracket
    r = ViolationReport(subject or "representation")
    r.compare("rep twist", ap(th, ap(al, "x"), ap(al, "y"), ap(be, "u")).over("xyu"),
              ap(be, ap(th, "x", "y", "u")).over("xyu"))
    order = ("a", "b", "x", "y", "u")
    e25 = (ap(th, ap(al, "a"), ap(al, "b"), ap(th, "x", "y", "u"))
           - ap(th, ap(al, "y"), ap(al, "b"), ap(th, "x", "a", "u"))
           - ap(th, ap(al, "x"), ap(B, "y", "a", "b"), ap(be, "u"))
           + ap(D, ap(al, "y"), ap(al, "a"), ap(th, "x", "b", "u")))
    r.vanishes("rep theta-theta", e25.over(order))
    e26 = (ap(th, ap(al, "a"), ap(al, "b"), ap(D, "x", "y", "u"))
           - ap(D, ap(al, "x"), ap(al, "y"), ap(th, "a", "b", "u"))
           + ap(th, ap(B, "x", "y", "a"), ap(al, "b"), ap(be, "u"))
           + ap(th, ap(al, "a"), ap(B, "x", "y", "b"), ap(be, "u")))
    r.vanishes("rep theta-D", e26.over(order))
    return r


def _action_identities(r: ViolationReport, act: Action, op: Tensor, tags, derived: bool):
    al_g, al_h, Bh = act.algebra.alpha, act.module.alpha, act.module.bracket
    order = ("x", "y", "u", "v", "w")
    lhs = ap(op, ap(al_g, "x"), ap(al_g, "y"), ap(Bh, "u", "v", "w"))
    rhs = (ap(Bh, ap(op, "x", "y", "u"), ap(al_h, "v"), ap(al_h, "w"))
           + ap(Bh, ap(al_h, "u"), ap(op, "x", "y", "v"), ap(al_h, "w"))
           + ap(Bh, ap(al_h, "u"), ap(al_h, "v"), ap(op, "x", "y", "w")))
    r.compare(tags[0], lhs.over(order), rhs.over(order), derived)
    r.vanishes(tags[1], lhs.over(order), derived)
    r.vanishes(tags[2], ap(Bh, ap(al_h, "u"), ap(al_h, "v"), ap(op, "x", "y", "w")).over(order), derived)


def check_action(act: Action, subject: str = "") -> ViolationReport:
    """Representation identities, the action identities for theta, and the
    D-versions of the action identities (reported as derived)."""
    r = ViolationReport(subject or (act.name or "action"))
    r.extend(check_representation(act))
    _action_identities(r, act, act.theta, ("action derivation", "action kills bracket", "bracket kills action"), False)
    _action_identities(r, act, act.d, ("D derivation", "D kills bracket", "bracket kills D"), True)
    return r


def adjoint_action(g: HomLts, verify: bool = True) -> Action:
    """``R(a, b) x = [x, a, b]`` as an action of ``g`` on itself.

    The action identities are not automatic; run :func:`check_action`.
    """
    if verify:
        rep = check_hom_lts(g)
        if not rep.passed:
            raise InvalidInput("adjoint action needs a valid Hom-Lts:\n" + rep.summary(5))
    theta = ap(g.bracket, "x", "a", "b").over("abx")
    return Action(g, g.alpha, theta, g, f"R({g.name})" if g.name else "R")


def transport_theta(act: Action, phi: Matrix, psi: Matrix) -> Tensor:
    """``theta'(x, y) u = psi theta(phi^-1 x, phi^-1 y) psi^-1 u``."""
    from .exact import inverse

    pi, si = inverse(phi), inverse(psi)
    return ap(psi, ap(act.theta, ap(pi, "x"), ap(pi, "y"), ap(si, "u"))).over("xyu")
