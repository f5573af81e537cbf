"""Shared builders for the test suite."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hlts.cohomology import Coboundary, cochain_space_basis
from hlts.deformation import TruncatedDeformation, extend
from hlts.exact import Matrix, Tensor, kernel_basis

GRID = (-1, 0, 1)


def combine(tensors, coeffs, shape):
    out = Tensor.zero(*shape)
    for c, t in zip(coeffs, tensors):
        if c:
            out = out + t.scale(c)
    return out


def c1_basis(op):
    return [f.tensor for f in cochain_space_basis(op, 1)]


def cocycle_basis(op):
    """Degree-1 cocycles: combinations of the cochain basis killed by delta."""
    basis = c1_basis(op)
    if not basis:
        return []
    d = Coboundary(op)
    images = [d(t).flat() for t in basis]
    rows = [[img[i] for img in images] for i in range(len(images[0]))]
    shape = ((op.source.dim,), op.target.dim)
    return [combine(basis, v, shape) for v in kernel_basis(Matrix.from_rows(rows, len(basis)))]


def grid_combinations(tensors, shape, grid=GRID, limit=None):
    """All combinations with coefficients from ``grid`` (the first ``limit`` of them)."""
    combos = itertools.product(grid, repeat=len(tensors))
    if limit is not None:
        combos = itertools.islice(combos, limit)
    return [combine(tensors, c, shape).to_matrix() for c in combos]


def random_combination(rng, tensors, shape, grid=(-2, -1, 0, 1, 2, Fraction(1, 2))):
    return combine(tensors, [rng.choice(grid) for _ in tensors], shape).to_matrix()


def linear_deformations(op, limit=None):
    """Order-one deformations ``A + t A1`` with ``A1`` a grid combination of cocycles."""
    shape = ((op.source.dim,), op.target.dim)
    return [TruncatedDeformation(op, (A1,), "lin")
            for A1 in grid_combinations(cocycle_basis(op), shape, limit=limit)]


def second_order(d1):
    """Extend an order-one deformation when its obstruction class vanishes."""
    ext = extend(d1)
    return d1.extended(ext.term) if ext.extendable else None


def candidate_terms(op, particular, grid_limit=None):
    """Twist-equivariant candidates for the next term: a grid over the degree-one
    cochain basis, plus the particular solution shifted by grid cocycles."""
    shape = ((op.source.dim,), op.target.dim)
    cands = grid_combinations(c1_basis(op), shape, limit=grid_limit)
    if particular is not None:
        cands += [particular + Z for Z in grid_combinations(cocycle_basis(op), shape, limit=grid_limit)]
    return cands
