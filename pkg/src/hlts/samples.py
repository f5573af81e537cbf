"""Seeded generators of small valid (and deliberately invalid) instances.

Every generator takes a ``random.Random`` so that property suites are
reproducible from a single seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .bridge import HomLieAlgebra, LieAction, check_hom_lie, check_lie_action, check_lie_o_operator
from .exact import Matrix, Tensor
from .lts import HomLts, check_hom_lts
from .ooperator import WeightedOOperator, check_o_operator
from .rep import Action, adjoint_action, check_action

F = Fraction
SMALL = (-1, 0, 1)
KAPPAS = (F(0), F(1), F(-1), F(2), F(-2), F(1, 2), F(3, 5))


# Hom-Lie triple systems ------------------------------------------------------

def _weights(rng: random.Random, n: int) -> list:
    pool = [F(1), F(-1), F(1), F(-1), F(2), F(0)]
    return [rng.choice(pool) for _ in range(n)]


def random_nilpotent_lts(rng: random.Random, dim: int, center: int | None = None,
                         weights=None, spread: int = 2) -> HomLts:
    """Brackets from the first ``dim - center`` basis vectors into the last ``center``,
    zero whenever a central vector is involved.  Twist is diagonal with the given
    weights and only weight-compatible entries are kept, so every output is a
    multiplicative Hom-Lts."""
    if center is None:
        center = rng.randint(1, dim - 2) if dim > 3 else max(0, dim - 2)
    p = dim - center
    if weights is not None:
        w = list(weights)
    else:
        w = _weights(rng, p)
        for _ in range(center):
            if p >= 2:
                i, j = rng.sample(range(p), 2)
                w.append(w[i] * w[j] * w[rng.randrange(p)])
            else:
                w.append(rng.choice([F(1), F(-1)]))
    raw = {}
    for i, j, k in itertools.product(range(p), repeat=3):
        for l in range(p, dim):
            if w[i] * w[j] * w[k] == w[l] and rng.random() < 0.8:
                raw[(i, j, k, l)] = F(rng.randint(-spread, spread))
    # skew in the first two slots, then remove the cyclic part
    skew = {}
    for (i, j, k, l), c in raw.items():
        skew[(i, j, k, l)] = skew.get((i, j, k, l), 0) + c
        skew[(j, i, k, l)] = skew.get((j, i, k, l), 0) - c
    data = {}
    for (i, j, k, l) in skew:
        s = skew.get((i, j, k, l), 0) + skew.get((j, k, i, l), 0) + skew.get((k, i, j, l), 0)
        v = skew[(i, j, k, l)] - F(s) / 3
        if v:
            data[(i, j, k, l)] = v
    g = HomLts(Tensor((dim,) * 3, dim, data), Matrix.diag(w), name="N")
    assert check_hom_lts(g).passed
    return g


def commuting_matrix(rng: random.Random, alpha_src: Matrix, alpha_tgt: Matrix, entries=SMALL) -> Matrix:
    """Random small-integer ``A`` with ``A alpha_src = alpha_tgt A`` (diagonal twists)."""
    rows = []
    for i in range(alpha_tgt.rows):
        rows.append([F(rng.choice(entries)) if alpha_tgt[i, i] == alpha_src[j, j] else F(0)
                     for j in range(alpha_src.rows)])
    return Matrix.from_rows(rows, alpha_src.rows)


def _is_diagonal(m: Matrix) -> bool:
    return all(m[i, j] == 0 for i in range(m.rows) for j in range(m.cols) if i != j)


def _random_commuting_general(rng, alpha_src, alpha_tgt, tries=40):
    if _is_diagonal(alpha_src) and _is_diagonal(alpha_tgt):
        return commuting_matrix(rng, alpha_src, alpha_tgt)
    for _ in range(tries):
        A = Matrix.from_rows([[F(rng.choice(SMALL)) for _ in range(alpha_src.rows)]
                              for _ in range(alpha_tgt.rows)], alpha_src.rows)
        if A @ alpha_src == alpha_tgt @ A:
            return A
    return Matrix.zero(alpha_tgt.rows, alpha_src.rows)


# Lie algebras and their Yau twists ---------------------------------------------

def _lie(dim, entries):
    data = {}
    for (i, j, l), c in entries.items():
        data[(i, j, l)] = F(c)
        data[(j, i, l)] = -F(c)
    return Tensor((dim, dim), dim, data)


def _lie_library(rng: random.Random):
    """``(name, dim, bracket, endomorphism)`` with the endomorphism drawn at random."""
    lam = rng.choice([F(1), F(2), F(-1), F(1, 2), F(3)])
    b, d = F(rng.choice(SMALL)), rng.choice([F(1), F(2), F(-1)])
    p, q, r, s = (F(rng.choice(SMALL)) for _ in range(4))
    x, y = F(rng.choice(SMALL)), F(rng.choice(SMALL))
    det = p * s - q * r
    a1, a2 = rng.choice([F(1), F(2), F(-1), F(0)]), rng.choice([F(1), F(-1), F(3)])
    c = rng.choice([F(1), F(-1), F(2)])
    return [
        ("abelian1", 1, _lie(1, {}), Matrix.diag([rng.choice([1, -1, 2, 0])])),
        ("abelian2", 2, _lie(2, {}), Matrix.from_rows([[p, q], [r, s]])),
        ("aff2", 2, _lie(2, {(0, 1, 1): 1}), Matrix.from_rows([[1, 0], [b, d]])),
        ("aff2-nil", 2, _lie(2, {(0, 1, 1): 1}), Matrix.from_rows([[0, 0], [b, 0]])),
        ("heis3", 3, _lie(3, {(0, 1, 2): 1}),
         Matrix.from_rows([[p, q, 0], [r, s, 0], [x, y, det]])),
        ("sl2", 3, _lie(3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1}),
         Matrix.diag([1, lam, 1 / lam])),
        ("r3", 3, _lie(3, {(0, 1, 1): 1, (0, 2, 2): c}), Matrix.diag([1, a1, a2])),
        ("aff2+1", 3, _lie(3, {(0, 1, 1): 1}), Matrix.from_rows([[1, 0, 0], [b, d, 0], [0, 0, a2]])),
    ]


def yau_twist(bracket: Tensor, alpha: Matrix, name: str = "") -> HomLieAlgebra:
    """``([x, y]_alpha = alpha [x, y], alpha)`` for a Lie bracket and an endomorphism."""
    return HomLieAlgebra(bracket.then(alpha), alpha, (), name)


def random_hom_lie(rng: random.Random, max_dim: int = 3) -> HomLieAlgebra:
    lib = [e for e in _lie_library(rng) if e[1] <= max_dim]
    name, dim, br, al = rng.choice(lib)
    g = yau_twist(br, al, name)
    assert check_hom_lie(g).passed, name
    return g


def adjoint_lie_rep(g: HomLieAlgebra) -> Tensor:
    """``rho(x) v = [x, v]`` for the Hom-Lie bracket."""
    return g.bracket


def abelian_copy(g: HomLieAlgebra) -> HomLieAlgebra:
    return HomLieAlgebra(Tensor.zero((g.dim, g.dim), g.dim), g.alpha, (), f"{g.name}-ab")


def random_lie_instance(rng: random.Random, max_dim: int = 3):
    """``(A, LieAction, kappa)`` that may or may not be an O-operator."""
    fam = rng.choice(["adjoint-abelian", "adjoint-abelian", "trivial-morphism", "abelian-target",
                      "adjoint-nilpotent", "adjoint-nilpotent"])
    g = random_hom_lie(rng, max_dim)
    kappa = rng.choice(KAPPAS)
    if fam == "adjoint-nilpotent" and max_dim >= 3:
        # two-step nilpotent, so [rho(x)u, alpha v] = 0 holds for the adjoint action
        name, dim, br, al = next(e for e in _lie_library(rng) if e[0] == "heis3")
        g = yau_twist(br, al, name)
        act = LieAction(g, g, adjoint_lie_rep(g), "ad")
        if rng.random() < 0.4:
            lam = F(rng.choice([1, -1, 2, 3]))
            A, kappa = Matrix.identity(3).scale(lam), -lam
        else:
            A = _random_commuting_general(rng, g.alpha, g.alpha)
    elif fam == "adjoint-abelian" or fam == "adjoint-nilpotent":
        h = abelian_copy(g)
        act = LieAction(g, h, adjoint_lie_rep(g), "ad")
        A = _random_commuting_general(rng, h.alpha, g.alpha)
    elif fam == "trivial-morphism":
        h = g
        act = LieAction(g, h, Tensor.zero((g.dim, g.dim), g.dim), "0")
        phi = rng.choice([Matrix.identity(g.dim), g.alpha])
        A = phi.scale(kappa) if rng.random() < 0.7 else _random_commuting_general(rng, h.alpha, g.alpha)
    else:
        h = random_hom_lie(rng, max_dim)
        gz = HomLieAlgebra(Tensor.zero((1, 1), 1), Matrix.diag([1]), (), "k")
        g = gz
        act = LieAction(g, h, Tensor.zero((1, h.dim), h.dim), "0")
        A = _random_commuting_general(rng, h.alpha, g.alpha)
    return A, act, kappa


def random_lie_o_operator(rng: random.Random, max_dim: int = 3, tries: int = 60):
    """A verified valid Lie-level weighted O-operator ``(A, act, kappa)``."""
    for _ in range(tries):
        A, act, kappa = random_lie_instance(rng, max_dim)
        if check_lie_action(act).passed and check_lie_o_operator(A, act, kappa, verify_action=False).passed:
            return A, act, kappa
    return Matrix.zero(act.algebra.dim, act.module.dim), act, kappa


# O-operators on Hom-Lts ------------------------------------------------------------

def _constructive_valid(rng, fam, g, h, A_rand):
    """A map known to be an O-operator for the family, with its weight."""
    if fam == "adjoint":
        choice = rng.random()
        if choice < 0.4:
            lam = F(rng.choice([1, -1, 2, F(1, 2)]))
            return Matrix.identity(g.dim).scale(lam), -2 * lam * lam
        if choice < 0.8:
            # into the centre-like part: columns of lambda-compatible entries landing where
            # every bracket vanishes
            dead = [l for l in range(g.dim)
                    if not any(k[0] == l or k[1] == l or k[2] == l for k in g.bracket.data)]
            rows = [[A_rand[i, j] if (i in dead and j not in dead) else F(0)
                     for j in range(h.dim)] for i in range(g.dim)]
            return Matrix.from_rows(rows, h.dim), rng.choice(KAPPAS)
    if fam == "trivial":
        c = F(rng.choice([1, -1, 2]))
        phi = rng.choice([Matrix.identity(g.dim), g.alpha])
        return phi.scale(c), c * c
    return Matrix.zero(g.dim, h.dim), rng.choice(KAPPAS)


def random_o_instance(rng: random.Random, max_dim: int = 3, prefer_valid: float = 0.5) -> WeightedOOperator:
    """A candidate operator whose action is valid; the map itself may fail."""
    fam = rng.choice(["adjoint", "adjoint", "trivial", "abelian-module", "lie-induced"])
    dim = rng.randint(min(3, max_dim), max_dim) if rng.random() < 0.8 else rng.randint(1, max_dim)
    if fam == "adjoint":
        g = random_nilpotent_lts(rng, dim)
        act = adjoint_action(g)
        h = g
    elif fam == "trivial":
        g = random_nilpotent_lts(rng, dim)
        h = g
        act = Action(g, h.alpha, Tensor.zero((dim, dim, dim), dim), h, "0")
    elif fam == "abelian-module":
        g = random_nilpotent_lts(rng, dim)
        h = HomLts.abelian(dim, g.alpha, name="ab")
        act = Action(g, h.alpha, adjoint_action(g).theta, h, "R")
    else:
        from .bridge import lts_from_hom_lie

        gl = random_hom_lie(rng, max_dim)
        g = lts_from_hom_lie(gl)
        h = HomLts.abelian(g.dim, g.alpha, name="ab")
        act = Action(g, h.alpha, adjoint_action(g, verify=False).theta, h, "R")
        if not check_action(act).passed:
            act = Action(g, h.alpha, Tensor.zero((g.dim,) * 3, g.dim), h, "0")
    A = _random_commuting_general(rng, h.alpha, g.alpha)
    kappa = rng.choice(KAPPAS)
    if rng.random() < prefer_valid:
        A, kappa = _constructive_valid(rng, fam, g, h, A)
    return WeightedOOperator(act, A, kappa, fam)


def random_valid_o_operator(rng: random.Random, max_dim: int = 3, tries: int = 50) -> WeightedOOperator:
    for _ in range(tries):
        op = random_o_instance(rng, max_dim, prefer_valid=0.7)
        if op.act.report.passed and check_o_operator(op, verify_action=False).passed:
            return op
    return op.with_matrix(Matrix.zero(op.target.dim, op.source.dim))


def e4() -> HomLts:
    """The four-dimensional fixture with ``[e1, e2, e1] = e4`` and its skew partner."""
    return HomLts.from_entries(4, {(0, 1, 0, 3): 1, (1, 0, 0, 3): -1},
                               Matrix.diag([1, -1, 1, -1]), name="E4")


def e4_operator(kappa=1) -> WeightedOOperator:
    g = e4()
    return WeightedOOperator(adjoint_action(g), Matrix.diag([0, 1, 1, 0]), kappa, "A")


def aff2_lts() -> HomLts:
    """The triple system ``[[x, y], z]`` of the two-dimensional affine Lie algebra."""
    from .bridge import lts_from_hom_lie

    return lts_from_hom_lie(yau_twist(_lie(2, {(0, 1, 1): 1}), Matrix.identity(2), "aff2"))


def unextendable_deformation():
    """``A_t = diag(1, t)`` on the affine triple system acting on an abelian copy:
    a linear deformation whose obstruction class is nonzero."""
    from .deformation import TruncatedDeformation

    g = aff2_lts()
    h = HomLts.abelian(2, g.alpha, name="ab")
    act = Action(g, h.alpha, adjoint_action(g).theta, h, "R")
    op = WeightedOOperator(act, Matrix.diag([1, 0]), 0, "A")
    return TruncatedDeformation(op, (Matrix.diag([0, 1]),), "D1")


def e4_post_lts():
    """The E4 bracket as floor with the four-term curly product attached to it."""
    from .postlts import HomPostLts

    g = e4()
    curly = Tensor((4, 4, 4), 4, {(3, 1, 2, 1): F(1), (3, 1, 1, 0): F(1),
                                  (2, 1, 3, 1): F(-1), (3, 3, 3, 1): F(-1)})
    return HomPostLts(g.bracket, curly, g.alpha, "P")
