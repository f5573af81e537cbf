"""Sparse multilinear maps ``K^{d_1} x ... x K^{d_k} -> K^{d_out}``.

A :class:`Tensor` stores ``{(i_1, ..., i_k, l): c}`` meaning that the value on
basis vectors ``(e_{i_1}, ..., e_{i_k})`` has coefficient ``c`` on ``e_l``.
Zero coefficients are never stored.  Coefficients are Fractions, or any ring
element supporting ``+``, ``*`` and truth testing (``TruncPoly`` is used for
deformation checks).

Identities are checked by building each side as a tensor over a common list
of variables with :func:`ap` and comparing the tensors entry by entry.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from .matrix import Matrix


class Tensor:
    __slots__ = ("in_dims", "out_dim", "data", "_by_out")

    def __init__(self, in_dims, out_dim, data=None):
        self.in_dims = tuple(in_dims)
        self.out_dim = out_dim
        clean = {}
        if data:
            k = len(self.in_dims)
            for idx, v in data.items():
                if not v:
                    continue
                idx = tuple(idx)
                if len(idx) != k + 1:
                    raise ValueError(f"index {idx} has wrong length for arity {k}")
                for i, d in zip(idx, self.in_dims + (out_dim,)):
                    if not 0 <= i < d:
                        raise IndexError(f"index {idx} out of range for dims {self.in_dims}->{out_dim}")
                clean[idx] = v
        self.data = clean
        self._by_out = None

    @classmethod
    def _raw(cls, in_dims, out_dim, data):
        t = cls.__new__(cls)
        t.in_dims = tuple(in_dims)
        t.out_dim = out_dim
        t.data = data
        t._by_out = None
        return t

    # constructors ---------------------------------------------------------------
    @classmethod
    def zero(cls, in_dims, out_dim) -> "Tensor":
        return cls._raw(in_dims, out_dim, {})

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Tensor":
        data = {}
        for i in range(m.rows):
            for j in range(m.cols):
                v = m[i, j]
                if v:
                    data[(j, i)] = v
        return cls._raw((m.cols,), m.rows, data)

    @classmethod
    def identity(cls, n: int) -> "Tensor":
        return cls._raw((n,), n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_function(cls, in_dims, out_dim, fn) -> "Tensor":
        """Tabulate ``fn(*basis_indices) -> vector`` over all basis tuples."""
        data = {}
        for idx in itertools.product(*(range(d) for d in in_dims)):
            vec = fn(*idx)
            for l, v in enumerate(vec):
                if v:
                    data[idx + (l,)] = v
        return cls._raw(in_dims, out_dim, data)

    @classmethod
    def from_vector(cls, v) -> "Tensor":
        """A constant (arity 0) map."""
        return cls._raw((), len(v), {(l,): x for l, x in enumerate(v) if x})

    # basic properties -----------------------------------------------------------
    @property
    def arity(self) -> int:
        return len(self.in_dims)

    def to_matrix(self) -> Matrix:
        if self.arity != 1:
            raise ValueError("only arity-1 tensors are matrices")
        rows = [[Fraction(0)] * self.in_dims[0] for _ in range(self.out_dim)]
        for (j, i), v in self.data.items():
            rows[i][j] = v
        return Matrix.from_rows(rows, self.in_dims[0])

    def nnz(self) -> int:
        return len(self.data)

    def is_zero(self) -> bool:
        return not self.data

    def value(self, idx) -> tuple:
        """Output vector at basis tuple ``idx``."""
        out = [Fraction(0)] * self.out_dim
        idx = tuple(idx)
        for l in range(self.out_dim):
            v = self.data.get(idx + (l,))
            if v:
                out[l] = v
        return tuple(out)

    def support(self) -> set:
        return {k[:-1] for k in self.data}

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.in_dims == other.in_dims and self.out_dim == other.out_dim
                and self.data == other.data)

    def __hash__(self):
        return hash((self.in_dims, self.out_dim, frozenset(self.data.items())))

    def __repr__(self):
        return f"Tensor({self.in_dims}->{self.out_dim}, nnz={len(self.data)})"

    # linear structure -----------------------------------------------------------
    def _check_same(self, other):
        if self.in_dims != other.in_dims or self.out_dim != other.out_dim:
            raise ValueError(f"shape mismatch {self.in_dims}->{self.out_dim} vs "
                             f"{other.in_dims}->{other.out_dim}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        data = dict(self.data)
        for k, v in other.data.items():
            s = data.get(k)
            s = v if s is None else s + v
            if s:
                data[k] = s
            else:
                data.pop(k, None)
        return Tensor._raw(self.in_dims, self.out_dim, data)

    def __neg__(self) -> "Tensor":
        return Tensor._raw(self.in_dims, self.out_dim, {k: -v for k, v in self.data.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c) -> "Tensor":
        if not c:
            return Tensor.zero(self.in_dims, self.out_dim)
        data = {}
        for k, v in self.data.items():
            w = c * v
            if w:
                data[k] = w
        return Tensor._raw(self.in_dims, self.out_dim, data)

    def map_values(self, fn) -> "Tensor":
        data = {}
        for k, v in self.data.items():
            w = fn(v)
            if w:
                data[k] = w
        return Tensor._raw(self.in_dims, self.out_dim, data)

    # structural operations -------------------------------------------------------
    def by_out(self):
        if self._by_out is None:
            g = defaultdict(list)
            for k, v in self.data.items():
                g[k[-1]].append((k[:-1], v))
            self._by_out = dict(g)
        return self._by_out

    def compose(self, slot: int, inner: "Tensor") -> "Tensor":
        """Plug ``inner``'s output into input ``slot``.

        The result has ``inner``'s inputs spliced in at position ``slot``.
        """
        if not 0 <= slot < self.arity:
            raise IndexError(f"slot {slot} out of range for arity {self.arity}")
        if inner.out_dim != self.in_dims[slot]:
            raise ValueError(f"cannot plug a map into dim {inner.out_dim} slot of dim {self.in_dims[slot]}")
        groups = inner.by_out()
        data = {}
        for k, v in self.data.items():
            g = groups.get(k[slot])
            if not g:
                continue
            pre, post = k[:slot], k[slot + 1:]
            for args, w in g:
                key = pre + args + post
                x = v * w
                s = data.get(key)
                s = x if s is None else s + x
                if s:
                    data[key] = s
                else:
                    data.pop(key, None)
        in_dims = self.in_dims[:slot] + inner.in_dims + self.in_dims[slot + 1:]
        return Tensor._raw(in_dims, self.out_dim, data)

    def then(self, m) -> "Tensor":
        """Post-compose the output with a matrix (or arity-1 tensor)."""
        mt = m if isinstance(m, Tensor) else Tensor.from_matrix(m)
        return mt.compose(0, self)

    def reorder(self, perm: Sequence[int]) -> "Tensor":
        """New slot ``j`` is old slot ``perm[j]``."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.arity)):
            raise ValueError(f"{perm} is not a permutation of the {self.arity} slots")
        data = {tuple(k[p] for p in perm) + (k[-1],): v for k, v in self.data.items()}
        return Tensor._raw(tuple(self.in_dims[p] for p in perm), self.out_dim, data)

    def restrict_out(self, indices) -> "Tensor":
        pos = {l: n for n, l in enumerate(indices)}
        data = {k[:-1] + (pos[k[-1]],): v for k, v in self.data.items() if k[-1] in pos}
        return Tensor._raw(self.in_dims, len(pos), data)

    def __call__(self, *vectors) -> tuple:
        """Contract with vectors, one per input slot."""
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(vectors)}")
        for v, d in zip(vectors, self.in_dims):
            if len(v) != d:
                raise ValueError(f"argument of length {len(v)} for slot of dim {d}")
        out = [Fraction(0)] * self.out_dim
        for k, c in self.data.items():
            acc = c
            for i, v in zip(k[:-1], vectors):
                x = v[i]
                if not x:
                    acc = None
                    break
                acc = acc * x
            if acc is not None:
                out[k[-1]] = out[k[-1]] + acc
        return tuple(out)

    def flat(self) -> list:
        """Dense coordinate vector, last index fastest."""
        dims = self.in_dims + (self.out_dim,)
        size = 1
        for d in dims:
            size *= d
        out = [Fraction(0)] * size
        for k, v in self.data.items():
            out[flat_index(k, dims)] = v
        return out

    @classmethod
    def from_flat(cls, in_dims, out_dim, vec) -> "Tensor":
        dims = tuple(in_dims) + (out_dim,)
        data = {}
        for n, v in enumerate(vec):
            if v:
                data[unflat_index(n, dims)] = v
        return cls._raw(in_dims, out_dim, data)


def flat_index(idx, dims) -> int:
    n = 0
    for i, d in zip(idx, dims):
        n = n * d + i
    return n


def unflat_index(n, dims) -> tuple:
    out = []
    for d in reversed(dims):
        n, r = divmod(n, d)
        out.append(r)
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# term builder


class Term:
    """A tensor whose input slots are labelled by variable names."""

    __slots__ = ("tensor", "vars")

    def __init__(self, tensor: Tensor, vars):
        self.tensor = tensor
        self.vars = tuple(vars)
        if len(self.vars) != tensor.arity:
            raise ValueError("one variable per slot required")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")

    def over(self, order) -> Tensor:
        order = tuple(order)
        if set(order) != set(self.vars) or len(order) != len(self.vars):
            raise ValueError(f"variables {self.vars} do not match {order}")
        pos = {v: n for n, v in enumerate(self.vars)}
        return self.tensor.reorder([pos[v] for v in order])

    def _align(self, other):
        if not isinstance(other, Term):
            raise TypeError("terms combine only with terms")
        if set(other.vars) != set(self.vars):
            raise ValueError(f"variables {self.vars} vs {other.vars}")
        return other.over(self.vars)

    def __add__(self, other):
        return Term(self.tensor + self._align(other), self.vars)

    def __sub__(self, other):
        return Term(self.tensor - self._align(other), self.vars)

    def __neg__(self):
        return Term(-self.tensor, self.vars)

    def scale(self, c):
        return Term(self.tensor.scale(c), self.vars)

    def __rmul__(self, c):
        return self.scale(c)


def ap(f, *args) -> Term:
    """Apply map ``f`` (Tensor or Matrix) to variables or sub-terms.

    ``ap(B, ap(alpha, 'a'), 'b', ap(B, 'x', 'y', 'z'))`` is the map
    ``(a, b, x, y, z) -> B(alpha a, b, B(x, y, z))``.
    """
    t = f if isinstance(f, Tensor) else Tensor.from_matrix(f)
    if len(args) != t.arity:
        raise ValueError(f"map of arity {t.arity} applied to {len(args)} arguments")
    names = []
    for slot in range(t.arity - 1, -1, -1):
        a = args[slot]
        if isinstance(a, str):
            names.insert(0, [a])
        else:
            if not isinstance(a, Term):
                raise TypeError(f"argument {a!r} is neither a variable nor a term")
            t = t.compose(slot, a.tensor)
            names.insert(0, list(a.vars))
    return Term(t, [v for group in names for v in group])


def witnesses(lhs: Tensor, rhs: Tensor):
    """Sorted basis tuples on which two tensors of equal shape differ."""
    lhs._check_same(rhs)
    bad = set()
    for k, v in lhs.data.items():
        if rhs.data.get(k, 0) != v:
            bad.add(k[:-1])
    for k, v in rhs.data.items():
        if lhs.data.get(k, 0) != v:
            bad.add(k[:-1])
    return sorted(bad)
