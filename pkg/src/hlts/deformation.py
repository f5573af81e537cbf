"""Linear and higher-order deformations of a weighted O-operator.

Deformation identities are evaluated with truncated-polynomial scalars, so
``[A_t u, A_t v, A_t w] = A_t(...)`` is checked exactly modulo ``t^{n+1}``
and violations are reported per power of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import (Cochain, Coboundary, ZeroCochain, cochain_space_basis,
                         cochain_report, cochain_violations, im_map)
from .exact import Matrix, Tensor, TruncPoly, ap, inverse, is_invertible, rank, solve
from .lts import l_operator
from .ooperator import WeightedOOperator
from .rep import d_operator
from .report import InvalidInput, RegularityRequired, ViolationReport


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    """``A_t = A + t A_1 + ... + t^n A_n``."""

    op: WeightedOOperator
    terms: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for k, m in enumerate(self.terms, 1):
            if m.shape != self.op.A.shape:
                raise InvalidInput(f"term A_{k} has shape {m.shape}, expected {self.op.A.shape}")

    @property
    def order(self) -> int:
        return len(self.terms)

    def coefficient(self, i: int) -> Matrix:
        return self.op.A if i == 0 else self.terms[i - 1]

    def extended(self, X: Matrix) -> "TruncatedDeformation":
        return TruncatedDeformation(self.op, self.terms + (X,), self.name)

    def truncated(self, n: int) -> "TruncatedDeformation":
        return TruncatedDeformation(self.op, self.terms[:n], self.name)


def _poly_matrix(mats, order: int) -> Tensor:
    """Arity-1 tensor whose entries are ``sum_i t^i mats[i]`` in ``K[t]/(t^(order+1))``."""
    rows, cols = mats[0].shape
    data = {}
    for i in range(rows):
        for j in range(cols):
            c = [m[i, j] for m in mats]
            if any(c):
                data[(j, i)] = TruncPoly(c, order)
    return Tensor._raw((cols,), rows, data)


def _split(t: Tensor, order: int) -> list:
    """Coefficient tensors of ``t^0 .. t^order``."""
    parts = [dict() for _ in range(order + 1)]
    for k, v in t.data.items():
        if isinstance(v, TruncPoly):
            for p, c in enumerate(v.coeffs):
                if c:
                    parts[p][k] = c
        elif v:
            parts[0][k] = v
    return [Tensor._raw(t.in_dims, t.out_dim, d) for d in parts]


def _compare_by_power(r: ViolationReport, tag: str, lhs: Tensor, rhs: Tensor, order: int,
                      lowest: int = 0):
    for p, (a, b) in enumerate(zip(_split(lhs, order), _split(rhs, order))):
        if p >= lowest:
            r.compare(f"{tag} [t^{p}]", a, b)


def _deformation_sides(op: WeightedOOperator, At: Tensor):
    g, h, th, D = op.target, op.source, op.act.theta, op.act.d
    lhs = ap(g.bracket, ap(At, "u"), ap(At, "v"), ap(At, "w")).over("uvw")
    inner = (ap(D, ap(At, "u"), ap(At, "v"), "w") - ap(th, ap(At, "u"), ap(At, "w"), "v")
             + ap(th, ap(At, "v"), ap(At, "w"), "u")).over("uvw")
    if op.kappa:
        inner = inner + h.bracket.scale(op.kappa)
    return lhs, inner.then(At)


def check_n_order(d: TruncatedDeformation, subject: str = "") -> ViolationReport:
    """Both deformation equations modulo ``t^{n+1}``, one tag per power of ``t``."""
    op, n = d.op, d.order
    At = _poly_matrix([d.coefficient(i) for i in range(n + 1)], n)
    r = ViolationReport(subject or (d.name or f"order-{n} deformation"))
    _compare_by_power(r, "operator twist", ap(At, ap(op.source.alpha, "u")).over("u"),
                      ap(op.target.alpha, ap(At, "u")).over("u"), n)
    lhs, rhs = _deformation_sides(op, At)
    _compare_by_power(r, "operator identity", lhs, rhs, n)
    return r


def is_cocycle(op: WeightedOOperator, A1: Matrix) -> ViolationReport:
    """``A1`` commutes with the twists and ``delta A1 = 0``."""
    r = ViolationReport("1-cocycle")
    t = Tensor.from_matrix(A1)
    r.compare("cocycle twist", ap(A1, ap(op.source.alpha, "u")).over("u"),
              ap(op.target.alpha, ap(A1, "u")).over("u"), derived=True)
    r.vanishes("cocycle condition", Coboundary(op)(t), derived=True)
    return r


def check_linear_deformation(op: WeightedOOperator, A1: Matrix, subject: str = "") -> ViolationReport:
    """Order-1 deformation equations, plus the equivalent cocycle condition as derived tags.

    Raises if the two routes disagree, since they are the same statement.
    """
    d = TruncatedDeformation(op, (A1,))
    r = check_n_order(d, subject or "linear deformation")
    c = is_cocycle(op, A1)
    direct = not any(v for v in r.violations if v.tag.endswith("[t^1]"))
    if direct != c.passed:
        raise AssertionError("deformation equations and cocycle condition disagree")
    r.extend(c)
    return r


def _generic_morphism(r: ViolationReport, tag: str, B1: Tensor, B2: Tensor, phi: Tensor, a1, a2):
    r.compare(f"{tag} twist", ap(phi, ap(a1, "x")).over("x"), ap(a2, ap(phi, "x")).over("x"))
    r.compare(f"{tag} bracket", ap(phi, ap(B1, "x", "y", "z")).over("xyz"),
              ap(B2, ap(phi, "x"), ap(phi, "y"), ap(phi, "z")).over("xyz"))


def linear_equivalence_report(op: WeightedOOperator, A1: Matrix, A1p: Matrix, a, b) -> ViolationReport:
    """Whether ``(Id + t alpha_g^{-1} L(a,b), Id + t alpha_h^{-1} D(a,b))`` is a homomorphism
    from ``A + t A1`` to ``A + t A1'`` over ``K[t]/(t^2)``."""
    g, h = op.target, op.source
    if not (is_invertible(g.alpha) and is_invertible(h.alpha)):
        raise RegularityRequired("linear equivalence needs invertible twists")
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    if len(a) != g.dim or len(b) != g.dim:
        raise InvalidInput("a and b must be vectors of g")
    if g.alpha @ a != a or g.alpha @ b != b:
        raise InvalidInput("a and b must be fixed by the twist of g")
    for m in (A1, A1p):
        rep = check_linear_deformation(op, m)
        if not rep.passed:
            raise InvalidInput("not a linear deformation:\n" + rep.summary(5))
    ig, ih = inverse(g.alpha), inverse(h.alpha)
    phi_g = _poly_matrix([Matrix.identity(g.dim), ig @ l_operator(g, a, b)], 1)
    phi_h = _poly_matrix([Matrix.identity(h.dim), ih @ d_operator(op.act, a, b)], 1)
    At = _poly_matrix([op.A, A1], 1)
    Atp = _poly_matrix([op.A, A1p], 1)
    r = ViolationReport("linear equivalence")
    _generic_morphism(r, "phi_h", h.bracket, h.bracket, phi_h, h.alpha, h.alpha)
    _generic_morphism(r, "phi_g", g.bracket, g.bracket, phi_g, g.alpha, g.alpha)
    r.compare("operator intertwining", ap(phi_g, ap(At, "u")).over("u"),
              ap(Atp, ap(phi_h, "u")).over("u"))
    th = op.act.theta
    r.compare("theta intertwining", ap(phi_h, ap(th, "x", "y", "u")).over("xyu"),
              ap(th, ap(phi_g, "x"), ap(phi_g, "y"), ap(phi_h, "u")).over("xyu"))
    return r


def check_linear_equivalence(op: WeightedOOperator, A1: Matrix, A1p: Matrix, a, b) -> bool:
    ok = linear_equivalence_report(op, A1, A1p, a, b).passed
    if ok:
        diff = Tensor.from_matrix(A1 - A1p)
        if diff != im_map(op, ZeroCochain(a, b)).tensor:
            raise AssertionError("equivalent deformations whose difference is not I(a, b)")
    return ok


# obstruction and extension -----------------------------------------------------

def obstruction(d: TruncatedDeformation, verify: bool = True) -> Cochain:
    """``Obs^n``: the part of the ``t^{n+1}`` coefficient of the deformation identity
    that does not involve ``A_{n+1}``, as a degree-2 cochain."""
    op, n = d.op, d.order
    if verify:
        r = check_n_order(d)
        if not r.passed:
            raise InvalidInput(f"not an order-{n} deformation:\n" + r.summary(5))
    g, th, D = op.target, op.act.theta, op.act.d
    total = None
    for i in range(n + 1):
        for j in range(n + 1):
            k = n + 1 - i - j
            if not 0 <= k <= n:
                continue
            Ai, Aj, Ak = d.coefficient(i), d.coefficient(j), d.coefficient(k)
            term = (ap(g.bracket, ap(Ai, "u"), ap(Aj, "v"), ap(Ak, "w"))
                    - ap(Ai, ap(D, ap(Aj, "u"), ap(Ak, "v"), "w")
                         - ap(th, ap(Aj, "u"), ap(Ak, "w"), "v")
                         + ap(th, ap(Aj, "v"), ap(Ak, "w"), "u")))
            total = term if total is None else total + term
    return Cochain(2, total.over("uvw"))


def obstruction_report(d: TruncatedDeformation, obs: Cochain | None = None) -> ViolationReport:
    """``Obs^n`` lies in the degree-2 cochain space and is a cocycle."""
    obs = obstruction(d) if obs is None else obs
    r = cochain_report(d.op, obs, "obstruction ")
    r.subject = "obstruction"
    r.vanishes("obstruction cocycle", Coboundary(d.op)(obs.tensor))
    return r


def solves_extension(d: TruncatedDeformation, X: Matrix, obs: Cochain | None = None) -> bool:
    """``X`` commutes with the twists and ``delta X = -Obs^n``."""
    op = d.op
    obs = obstruction(d) if obs is None else obs
    t = Tensor.from_matrix(X)
    if cochain_violations(op, Cochain(1, t)):
        return False
    return Coboundary(op)(t) == -obs.tensor


@dataclass(frozen=True)
class Extension:
    term: Matrix | None
    obstruction: Cochain
    class_vanishes: bool

    @property
    def extendable(self) -> bool:
        return self.term is not None


def extend(d: TruncatedDeformation, verify: bool = True) -> Extension:
    """Solve ``delta X = -Obs^n`` over twist-equivariant ``X``.

    Returns the term ``A_{n+1}`` when the class of ``Obs^n`` in degree 2 vanishes.
    """
    op = d.op
    obs = obstruction(d, verify)
    basis = cochain_space_basis(op, 1)
    delta = Coboundary(op)
    cols = [delta(f.tensor).flat() for f in basis]
    target = [-x for x in obs.tensor.flat()]
    size = len(target)
    if cols:
        m = [[c[i] for c in cols] for i in range(size)]
        sol = solve(m, target)
        in_image = rank(cols + [target], size) == rank(cols, size)
    else:
        sol = () if not any(target) else None
        in_image = not any(target)
    if (sol is not None) != in_image:
        raise AssertionError("solver and rank test disagree on extendability")
    if sol is None:
        return Extension(None, obs, False)
    X = Tensor.zero((op.source.dim,), op.target.dim)
    for c, f in zip(sol, basis):
        if c:
            X = X + f.tensor.scale(c)
    Xm = X.to_matrix()
    if verify:
        r = check_n_order(d.extended(Xm))
        if not r.passed:
            raise AssertionError("extension does not re-verify:\n" + r.summary(5))
    return Extension(Xm, obs, True)
