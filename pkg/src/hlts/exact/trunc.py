"""Truncated polynomials ``K[t]/(t^(m+1))`` with rational coefficients."""

from __future__ import annotations

from fractions import Fraction


class TruncPoly:
    """Element ``c_0 + c_1 t + ... + c_m t^m`` of ``K[t]/(t^(m+1))``.

    Mixed arithmetic with ints and Fractions is supported so that the same
    tensor-contraction code runs over ``K`` and over ``K[t]/(t^(m+1))``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        c = [Fraction(x) for x in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(c) > order + 1:
            c = c[: order + 1]
        c.extend([Fraction(0)] * (order + 1 - len(c)))
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, value, order):
        return cls([value], order)

    @classmethod
    def t(cls, order):
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _coerce(self, other):
        if isinstance(other, TruncPoly):
            if other.order != self.order:
                raise ValueError("truncation orders differ")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * self.order
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TruncPoly([a + b for a, b in zip(self.coeffs, o)])

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly([-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TruncPoly([a - b for a, b in zip(self.coeffs, o)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TruncPoly([b - a for a, b in zip(self.coeffs, o)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncPoly([a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self.order
        out = [Fraction(0)] * (m + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(m + 1 - i):
                    b = o[j]
                    if b:
                        out[i + j] += a * b
        return TruncPoly(out)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, power: int) -> Fraction:
        return self.coeffs[power]

    def __repr__(self):
        return f"TruncPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if k == 0 else f"({c})*t^{k}")
        return " + ".join(parts) if parts else "0"
