"""Hom-Lie triple systems given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Matrix, Tensor, ap, rank
from .report import InvalidInput, ViolationReport, require_cap


def _vec(v, n, what="vector"):
    if len(v) != n:
        raise InvalidInput(f"{what} has length {len(v)}, expected {n}")
    return tuple(Fraction(x) for x in v)


def const(v) -> Tensor:
    return Tensor.from_vector(v)


@dataclass(frozen=True, eq=False)
class HomLts:
    """``(g, [-,-,-], alpha)``: bracket ``c[i][j][k][l]`` is the ``e_l``
    coefficient of ``[e_i, e_j, e_k]``."""

    bracket: Tensor
    alpha: Matrix
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        d = self.alpha.rows
        if self.alpha.cols != d:
            raise InvalidInput("twist map must be square")
        if self.bracket.in_dims != (d, d, d) or self.bracket.out_dim != d:
            raise InvalidInput(
                f"bracket shape {self.bracket.in_dims}->{self.bracket.out_dim} does not match "
                f"twist of dimension {d}")
        if self.labels and len(self.labels) != d:
            raise InvalidInput("one basis label per dimension required")

    @property
    def dim(self) -> int:
        return self.alpha.rows

    @property
    def regular(self) -> bool:
        return rank(self.alpha) == self.dim

    @classmethod
    def from_entries(cls, dim, entries, alpha=None, **kw) -> "HomLts":
        """``entries`` maps ``(i, j, k, l)`` to coefficients."""
        alpha = Matrix.identity(dim) if alpha is None else alpha
        return cls(Tensor((dim,) * 3, dim, {k: Fraction(v) for k, v in entries.items()}), alpha, **kw)

    @classmethod
    def abelian(cls, dim, alpha=None, **kw) -> "HomLts":
        return cls.from_entries(dim, {}, alpha, **kw)

    def with_bracket(self, bracket: Tensor) -> "HomLts":
        return HomLts(bracket, self.alpha, self.labels, self.name)

    def same_structure(self, other: "HomLts") -> bool:
        return self.bracket == other.bracket and self.alpha == other.alpha

    def basis(self, i):
        return tuple(Fraction(int(j == i)) for j in range(self.dim))


def check_hom_lts(g: HomLts, subject: str = "") -> ViolationReport:
    """Skew-symmetry, cyclic identity, multiplicativity and the fundamental
    identity, each evaluated on every basis tuple."""
    require_cap(g.dim, "fundamental identity")
    B, al = g.bracket, g.alpha
    rep = ViolationReport(subject or (g.name or "hom-lts"))
    xyz = ("x", "y", "z")
    rep.vanishes("skew", (ap(B, "x", "y", "z") + ap(B, "y", "x", "z")).over(xyz))
    rep.vanishes("cyclic",
                 (ap(B, "x", "y", "z") + ap(B, "z", "x", "y") + ap(B, "y", "z", "x")).over(xyz))
    rep.compare("multiplicativity",
                ap(al, ap(B, "x", "y", "z")).over(xyz),
                ap(B, ap(al, "x"), ap(al, "y"), ap(al, "z")).over(xyz))
    order = ("a", "b", "x", "y", "z")
    lhs = ap(B, ap(al, "a"), ap(al, "b"), ap(B, "x", "y", "z"))
    rhs = (ap(B, ap(B, "a", "b", "x"), ap(al, "y"), ap(al, "z"))
           + ap(B, ap(al, "x"), ap(B, "a", "b", "y"), ap(al, "z"))
           + ap(B, ap(al, "x"), ap(al, "y"), ap(B, "a", "b", "z")))
    rep.compare("fundamental identity", lhs.over(order), rhs.over(order))
    return rep


def bracket_eval(g: HomLts, x, y, z) -> tuple:
    n = g.dim
    return g.bracket(_vec(x, n), _vec(y, n), _vec(z, n))


def l_operator(g: HomLts, a, b) -> Matrix:
    """Matrix of ``x -> [a, b, x]``."""
    n = g.dim
    t = g.bracket.compose(0, const(_vec(a, n))).compose(0, const(_vec(b, n)))
    return t.to_matrix()


def r_operator(g: HomLts, a, b) -> Matrix:
    """Matrix of ``x -> [x, a, b]``."""
    n = g.dim
    t = g.bracket.compose(1, const(_vec(a, n))).compose(1, const(_vec(b, n)))
    return t.to_matrix()


def check_lts_morphism(g1: HomLts, g2: HomLts, phi: Matrix, subject: str = "") -> ViolationReport:
    """``phi alpha_1 = alpha_2 phi`` and ``phi [x,y,z]_1 = [phi x, phi y, phi z]_2``."""
    if phi.shape != (g2.dim, g1.dim):
        raise InvalidInput(f"morphism matrix has shape {phi.shape}, expected {(g2.dim, g1.dim)}")
    rep = ViolationReport(subject or "lts morphism")
    rep.compare("twist intertwining", ap(phi, ap(g1.alpha, "x")).over("x"),
                ap(g2.alpha, ap(phi, "x")).over("x"))
    xyz = ("x", "y", "z")
    rep.compare("bracket intertwining", ap(phi, ap(g1.bracket, "x", "y", "z")).over(xyz),
                ap(g2.bracket, ap(phi, "x"), ap(phi, "y"), ap(phi, "z")).over(xyz))
    return rep


def direct_sum_matrix(a: Matrix, b: Matrix) -> Matrix:
    n = a.rows + b.rows
    m = a.cols + b.cols
    rows = [[Fraction(0)] * m for _ in range(n)]
    for i in range(a.rows):
        for j in range(a.cols):
            rows[i][j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.cols):
            rows[a.rows + i][a.cols + j] = b[i, j]
    return Matrix.from_rows(rows, m)


def semidirect_product(g: HomLts, h: HomLts, act, kappa, verify: bool = True) -> HomLts:
    """Bracket on ``g + h``:
    ``[x+u, y+v, z+w] = [x,y,z]_g + D(x,y)w - theta(x,z)v + theta(y,z)u + kappa [u,v,w]_h``.

    Basis order: the ``g`` basis followed by the ``h`` basis.
    """
    from .rep import check_action

    if act.algebra is not g and not act.algebra.same_structure(g):
        raise InvalidInput("action is not an action of the given g")
    if act.module is not h and not act.module.same_structure(h):
        raise InvalidInput("action does not act on the given h")
    if verify:
        r = check_action(act)
        if not r.passed:
            raise InvalidInput("semidirect product needs a valid action:\n" + r.summary(5))
    kappa = Fraction(kappa)
    dg, dh = g.dim, h.dim
    th = act.theta
    data = {}

    def put(key, v):
        s = data.get(key, 0) + v
        if s:
            data[key] = s
        else:
            data.pop(key, None)

    for (i, j, k, l), c in g.bracket.data.items():
        put((i, j, k, l), c)
    for (x, y, u, l), c in th.data.items():
        # theta(x,y)u enters as D(x',y')w with D(x',y') = theta(y',x') - theta(x',y')
        put((y, x, dg + u, dg + l), c)
        put((x, y, dg + u, dg + l), -c)
        # -theta(x,z)v : arguments (g, h, g)
        put((x, dg + u, y, dg + l), -c)
        # theta(y,z)u : arguments (h, g, g)
        put((dg + u, x, y, dg + l), c)
    if kappa:
        for (i, j, k, l), c in h.bracket.data.items():
            put((dg + i, dg + j, dg + k, dg + l), kappa * c)
    n = dg + dh
    labels = ()
    if g.labels or h.labels:
        labels = tuple(g.labels or [f"g{i}" for i in range(dg)]) + tuple(h.labels or [f"h{i}" for i in range(dh)])
    return HomLts(Tensor((n,) * 3, n, data), direct_sum_matrix(g.alpha, h.alpha), labels,
                  f"{g.name or 'g'}x{h.name or 'h'}")
