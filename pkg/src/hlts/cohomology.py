"""Cohomology of a weighted O-operator.

Degree ``n >= 1`` cochains are ``(2n-1)``-linear maps ``h^{x(2n-1)} -> g`` that
commute with the twists, are skew in the first two of their last three slots
and have vanishing cyclic sum over those three slots.  Each constrained space
is computed as a kernel, and ``delta`` becomes a matrix between coordinate
spaces, so all dimensions are exact ranks.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import Matrix, Tensor, Term, ap, inverse, is_invertible, kernel_basis, rank
from .ooperator import WeightedOOperator, descent_lts
from .rep import Representation, check_representation
from .report import DimensionCapExceeded, InvalidInput, RegularityRequired, ViolationReport

DEFAULT_MAX_DEGREE = 2
MAX_COCHAIN_ENTRIES = 60000


def max_degree() -> int:
    raw = os.environ.get("HLTS_MAX_DEGREE")
    return int(raw) if raw else DEFAULT_MAX_DEGREE


def _require_valid(op: WeightedOOperator):
    if not op.report.passed:
        raise InvalidInput("not a weighted O-operator:\n" + op.report.summary(5))


# the representation theta_A --------------------------------------------------

def theta_A_tensor(op: WeightedOOperator) -> Tensor:
    """``theta_A(u, v) x = [x, Au, Av]_g + A(theta(x, Av) u - D(x, Au) v)`` in ``(u, v, x)``."""
    A, B, th, D = op.A, op.target.bracket, op.act.theta, op.act.d
    t = (ap(B, "x", ap(A, "u"), ap(A, "v"))
         + ap(A, ap(th, "x", ap(A, "v"), "u") - ap(D, "x", ap(A, "u"), "v")))
    return t.over("uvx")


def D_A_tensor(op: WeightedOOperator) -> Tensor:
    """``D_A(u, v) x = [Au, Av, x]_g + A(theta(Au, x) v - theta(Av, x) u)``."""
    A, B, th = op.A, op.target.bracket, op.act.theta
    t = (ap(B, ap(A, "u"), ap(A, "v"), "x")
         + ap(A, ap(th, ap(A, "u"), "x", "v") - ap(th, ap(A, "v"), "x", "u")))
    return t.over("uvx")


def theta_A(op: WeightedOOperator, verify: bool = True) -> Representation:
    """Representation of the descent Hom-Lts on ``(g, alpha_g)``."""
    if verify:
        _require_valid(op)
    rep = Representation(descent_lts(op, verify), op.target.alpha, theta_A_tensor(op))
    if verify:
        r = check_representation(rep)
        if not r.passed:
            raise InvalidInput("theta_A fails the representation identities:\n" + r.summary(5))
    return rep


# cochains --------------------------------------------------------------------

@dataclass(frozen=True)
class Cochain:
    degree: int
    tensor: Tensor

    @property
    def arity(self) -> int:
        return 2 * self.degree - 1

    def is_zero(self) -> bool:
        return self.tensor.is_zero()


@dataclass(frozen=True)
class ZeroCochain:
    """An ordered pair ``(a, b)`` of twist-fixed vectors of ``g``."""

    a: tuple
    b: tuple


def _arity(n: int) -> int:
    if n < 1:
        raise InvalidInput(f"cochain degree must be >= 1, got {n}")
    return 2 * n - 1


def _check_degree(op: WeightedOOperator, n: int, cap: int | None, image: bool = False):
    """The cap bounds the degree a computation starts from; sizes are checked
    for the degree the result lives in (``n + 1`` when ``image``)."""
    cap = max_degree() if cap is None else cap
    if n > cap:
        raise DimensionCapExceeded(f"degree {n} exceeds the degree cap {cap} (set HLTS_MAX_DEGREE)")
    size = op.source.dim ** _arity(n + image) * op.target.dim
    if size > MAX_COCHAIN_ENTRIES:
        raise DimensionCapExceeded(f"degree {n} cochains have {size} coordinates, above {MAX_COCHAIN_ENTRIES}")


@lru_cache(maxsize=None)
def _last_three_space(dh: int) -> tuple:
    """Basis of trilinear coefficient arrays ``c[a][b][c]`` skew in ``(a, b)`` with
    vanishing cyclic sum, flattened last index fastest."""
    n = dh ** 3
    idx = lambda a, b, c: (a * dh + b) * dh + c
    rows = []
    for a, b, c in itertools.product(range(dh), repeat=3):
        r = [0] * n
        r[idx(a, b, c)] += 1
        r[idx(b, a, c)] += 1
        if any(r):
            rows.append(r)
        r = [0] * n
        for p, q, s in ((a, b, c), (b, c, a), (c, a, b)):
            r[idx(p, q, s)] += 1
        if any(r):
            rows.append(r)
    return tuple(kernel_basis(rows, n)) if rows else tuple(
        tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n))


def _equivariance_defect(f: Tensor, alpha_h: Matrix, alpha_g: Matrix) -> Tensor:
    m = f.arity
    names = [f"v{i}" for i in range(m)]
    lhs = ap(alpha_g, ap(f, *names)).over(names)
    rhs = ap(f, *[ap(alpha_h, x) for x in names]).over(names)
    return lhs - rhs


def _ambient_tensors(dh: int, dg: int, m: int):
    """Basis of the skew/cyclic constrained space (no twist condition yet)."""
    if m < 3:
        for idx in itertools.product(range(dh), repeat=m):
            for l in range(dg):
                yield Tensor._raw((dh,) * m, dg, {idx + (l,): Fraction(1)})
        return
    tri = _last_three_space(dh)
    for head in itertools.product(range(dh), repeat=m - 3):
        for s in tri:
            for l in range(dg):
                data = {}
                for pos, c in enumerate(s):
                    if c:
                        a, r = divmod(pos, dh * dh)
                        b, cc = divmod(r, dh)
                        data[head + (a, b, cc, l)] = c
                yield Tensor._raw((dh,) * m, dg, data)


def cochain_space_basis(op: WeightedOOperator, n: int, cap: int | None = None) -> list:
    """Basis of the degree-``n`` cochain space as a list of :class:`Cochain`."""
    _check_degree(op, n, cap)
    return [Cochain(n, t) for t in _space_basis(op.source.dim, op.target.dim, _arity(n),
                                                 op.source.alpha, op.target.alpha)]


def _space_basis(dh, dg, m, alpha_h, alpha_g) -> list:
    gens = list(_ambient_tensors(dh, dg, m))
    if not gens:
        return []
    size = dh ** m * dg
    defects = [_equivariance_defect(t, alpha_h, alpha_g).flat() for t in gens]
    # columns are generators; find combinations with zero defect
    rows = [[d[i] for d in defects] for i in range(size)]
    rows = [r for r in rows if any(r)]
    if not rows:
        coeffs = [tuple(Fraction(int(i == j)) for i in range(len(gens))) for j in range(len(gens))]
    else:
        coeffs = kernel_basis(rows, len(gens))
    out = []
    for c in coeffs:
        t = Tensor.zero((dh,) * m, dg)
        for x, g in zip(c, gens):
            if x:
                t = t + g.scale(x)
        out.append(t)
    return out


def cochain_report(op: WeightedOOperator, f: Cochain, prefix: str = "") -> ViolationReport:
    """The three constraint families of the cochain space, with witnesses."""
    t = f.tensor
    m = t.arity
    names = [f"v{i}" for i in range(m)]
    r = ViolationReport(prefix.strip() or "cochain")
    r.compare(prefix + "twist equivariance", ap(op.target.alpha, ap(t, *names)).over(names),
              ap(t, *[ap(op.source.alpha, x) for x in names]).over(names))
    if m >= 3:
        head = list(range(m - 3))
        r.vanishes(prefix + "skew", t + t.reorder(head + [m - 2, m - 3, m - 1]))
        c1 = t.reorder(head + [m - 2, m - 1, m - 3])
        c2 = t.reorder(head + [m - 1, m - 3, m - 2])
        r.vanishes(prefix + "cyclic", t + c1 + c2)
    return r


def cochain_violations(op: WeightedOOperator, f: Cochain) -> list:
    """Names of the constraint families ``f`` violates."""
    return cochain_report(op, f).tags()


# the coboundary ----------------------------------------------------------------

def _cochain_tensor(op, f) -> Tensor:
    t = f.tensor if isinstance(f, Cochain) else f
    dh, dg = op.source.dim, op.target.dim
    if t.out_dim != dg or any(d != dh for d in t.in_dims) or t.arity % 2 == 0:
        raise InvalidInput(f"cochain of shape {t.in_dims}->{t.out_dim} does not fit h={dh}, g={dg}")
    return t


class Coboundary:
    """``delta`` of a fixed operator; caches theta_A, D_A, the descent bracket and twist powers."""

    def __init__(self, op: WeightedOOperator):
        self.op = op
        self.th = theta_A_tensor(op)
        self.D = D_A_tensor(op)
        self.br = op.descent_bracket
        self.al = op.source.alpha
        self._pow = {}

    def power(self, k):
        if k not in self._pow:
            self._pow[k] = self.al.power(k)
        return self._pow[k]

    def __call__(self, f) -> Tensor:
        t = _cochain_tensor(self.op, f)
        n = (t.arity + 1) // 2
        v = [f"v{i}" for i in range(1, 2 * n + 2)]  # v[0] is v_1
        V = lambda i: v[i - 1]
        P = self.power(n - 1)
        tw = lambda i: ap(P, V(i))
        al = lambda i: ap(self.al, V(i))
        terms = [
            ap(self.th, tw(2 * n), tw(2 * n + 1), ap(t, *[V(i) for i in range(1, 2 * n)])),
            -ap(self.th, tw(2 * n - 1), tw(2 * n + 1),
                ap(t, *[V(i) for i in range(1, 2 * n - 1)], V(2 * n))),
        ]
        for i in range(1, n + 1):
            rest = [V(k) for k in range(1, 2 * i - 1)] + [V(k) for k in range(2 * i + 1, 2 * n + 2)]
            term = ap(self.D, tw(2 * i - 1), tw(2 * i), ap(t, *rest))
            terms.append(term if (i + n) % 2 == 0 else -term)
        for i in range(1, n + 1):
            for j in range(2 * i + 1, 2 * n + 2):
                args = [al(k) for k in range(1, 2 * i - 1)]
                for k in range(2 * i + 1, 2 * n + 2):
                    if k == j:
                        args.append(ap(self.br, V(2 * i - 1), V(2 * i), V(j)))
                    else:
                        args.append(al(k))
                term = ap(t, *args)
                terms.append(term if (i + n + 1) % 2 == 0 else -term)
        total = terms[0]
        for x in terms[1:]:
            total = total + x
        return total.over(v)


def coboundary(op: WeightedOOperator, f, cap: int | None = None) -> Cochain:
    """``delta f`` for a degree-``n`` cochain ``f``; returns a degree ``n + 1`` cochain."""
    t = _cochain_tensor(op, f)
    n = (t.arity + 1) // 2
    _check_degree(op, n, cap, image=True)
    return Cochain(n + 1, Coboundary(op)(t))


# degree zero -------------------------------------------------------------------

def _fixed_vector(alpha: Matrix, v, what):
    v = tuple(Fraction(x) for x in v)
    if len(v) != alpha.rows:
        raise InvalidInput(f"{what} has length {len(v)}, expected {alpha.rows}")
    if alpha @ v != v:
        raise InvalidInput(f"{what} is not fixed by the twist")
    return v


def im_map(op: WeightedOOperator, z: ZeroCochain) -> Cochain:
    """``I(a,b) v = A(D(a,b) alpha_h^{-1} v) - [a, b, A alpha_h^{-1} v]_g``."""
    if not is_invertible(op.source.alpha):
        raise RegularityRequired("the degree-0 differential needs an invertible twist on h")
    a = _fixed_vector(op.target.alpha, z.a, "a")
    b = _fixed_vector(op.target.alpha, z.b, "b")
    inv = inverse(op.source.alpha)
    ca, cb = Term(Tensor.from_vector(a), ()), Term(Tensor.from_vector(b), ())
    t = (ap(op.A, ap(op.act.d, ca, cb, ap(inv, "v")))
         - ap(op.target.bracket, ca, cb, ap(op.A, ap(inv, "v"))))
    return Cochain(1, t.over(["v"]))


def fixed_space(alpha: Matrix) -> list:
    n = alpha.rows
    return kernel_basis(alpha - Matrix.identity(n))


# dimensions --------------------------------------------------------------------

@dataclass(frozen=True)
class CohomologyDims:
    degree: int
    dim_cochains: int
    dim_z: int
    dim_b: int | None
    regular: dict = field(default_factory=dict)
    delta_closed: bool = True

    @property
    def dim_h(self) -> int | None:
        return None if self.dim_b is None else self.dim_z - self.dim_b

    def to_json(self) -> dict:
        return {"degree": self.degree, "dimC": self.dim_cochains, "dimZ": self.dim_z,
                "dimB": self.dim_b, "dimH": self.dim_h, "regular_flags": dict(self.regular),
                "coboundaries_available": self.dim_b is not None,
                "delta_lands_in_cochains": self.delta_closed}


def delta_images(op: WeightedOOperator, n: int, basis=None, cap: int | None = None) -> list:
    basis = cochain_space_basis(op, n, cap) if basis is None else basis
    d = Coboundary(op)
    return [d(f.tensor) for f in basis]


def cohomology_dims(op: WeightedOOperator, n: int, cap: int | None = None) -> CohomologyDims:
    _require_valid(op)
    _check_degree(op, n, cap, image=True)
    basis = cochain_space_basis(op, n, cap)
    images = delta_images(op, n, basis, cap)
    flat = [t.flat() for t in images]
    size = op.source.dim ** (2 * n + 1) * op.target.dim
    dim_z = len(basis) - (rank(flat, size) if flat else 0)
    closed = all(not cochain_violations(op, Cochain(n + 1, t)) for t in images)
    reg = {"h": op.source.regular, "g": op.target.regular}
    if n == 1:
        if not (reg["h"] and reg["g"]):
            dim_b = None
        else:
            fix = fixed_space(op.target.alpha)
            vecs = []
            for i in range(len(fix)):
                for j in range(i + 1, len(fix)):
                    vecs.append(im_map(op, ZeroCochain(fix[i], fix[j])).tensor.flat())
            n1 = op.source.dim * op.target.dim
            dim_b = rank(vecs, n1) if vecs else 0
    else:
        prev = cochain_space_basis(op, n - 1, cap)
        pf = [t.flat() for t in delta_images(op, n - 1, prev, cap)]
        dim_b = rank(pf, op.source.dim ** (2 * n - 1) * op.target.dim) if pf else 0
    return CohomologyDims(n, len(basis), dim_z, dim_b, reg, closed)


# transport ---------------------------------------------------------------------

def transport_cochain(phi_h: Matrix, phi_g: Matrix, f: Cochain) -> Cochain:
    """``Phi(f)(v_1, ...) = phi_g f(phi_h^{-1} v_1, ...)``."""
    try:
        inv = inverse(phi_h)
    except ZeroDivisionError:
        raise InvalidInput("transport needs an invertible map on h") from None
    t = f.tensor
    names = [f"v{i}" for i in range(t.arity)]
    out = ap(phi_g, ap(t, *[ap(inv, x) for x in names])).over(names)
    return Cochain(f.degree, out)
