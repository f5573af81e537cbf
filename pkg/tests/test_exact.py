import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hlts.exact import (Matrix, RationalParseError, Tensor, TruncPoly, ap, format_scalar, in_span,
                        inverse, is_invertible, kernel_basis, parse_scalar, rank, solve)
from hlts.exact import _elim_py, elim

small = st.integers(-4, 4)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, entries=small):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(c)] for _ in range(r)], c


@st.composite
def frac_matrices(draw, max_n=5):
    r = draw(st.integers(1, max_n))
    c = draw(st.integers(1, max_n))
    return Matrix.from_rows([[draw(fractions) for _ in range(c)] for _ in range(r)], c)


@given(int_matrices())
def test_rank_matches_sympy(mc):
    rows, c = mc
    assert rank(rows, c) == sympy.Matrix(rows).rank()


@given(frac_matrices())
def test_kernel_basis_is_a_basis(m):
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert not any(m @ v)


@given(frac_matrices(), st.lists(fractions, min_size=5, max_size=5))
def test_solve_consistent_systems(m, x):
    x = x[: m.cols]
    b = m @ x
    sol = solve(m, b)
    assert sol is not None and m @ sol == b


def test_solve_inconsistent_system_returns_none():
    m = Matrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, (1, 3)) is None


@given(frac_matrices())
def test_inverse_round_trip(m):
    if not m.is_square():
        return
    if is_invertible(m):
        assert inverse(m) @ m == Matrix.identity(m.rows)
    else:
        with pytest.raises(ZeroDivisionError):
            inverse(m)


def test_in_span():
    assert in_span([(1, 0, 1), (0, 1, 1)], (2, 3, 5))
    assert not in_span([(1, 0, 1), (0, 1, 1)], (0, 0, 1))


@pytest.mark.skipif(elim._elim_c is None, reason="compiled kernel not built")
@given(int_matrices(8, 8, st.integers(-50, 50)))
def test_backends_agree(mc):
    rows, c = mc
    assert elim.rref_int(rows, c, "compiled") == _elim_py.rref_int(rows, c)


@pytest.mark.skipif(elim._elim_c is None, reason="compiled kernel not built")
def test_compiled_backend_falls_back_on_overflow():
    big = 2 ** 70
    rows = [[big, 1, 3], [1, big, 5], [7, 11, big]]
    assert elim.rref_int(rows, 3, "compiled") == _elim_py.rref_int(rows, 3)
    assert rank(rows, 3) == sympy.Matrix(rows).rank()


def test_pure_python_backend_on_a_random_batch():
    rng = random.Random(3)
    for _ in range(40):
        rows = [[rng.randint(-9, 9) for _ in range(7)] for _ in range(rng.randint(1, 9))]
        assert elim.rref_int(rows, 7, "python") == _elim_py.rref_int(rows, 7)
        assert len(_elim_py.rref_int(rows, 7)[0]) == sympy.Matrix(rows).rank()


def test_rref_rejects_ragged_rows():
    with pytest.raises(ValueError):
        _elim_py.rref_int([[1, 2], [3]], 2)


@pytest.mark.parametrize("text,value", [
    ("3/5", Fraction(3, 5)), ("-2", Fraction(-2)), (" 4 / 6 ", Fraction(2, 3)),
    ("−1/2", Fraction(-1, 2)), (7, Fraction(7)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", True, None, "1//2"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(RationalParseError):
        parse_scalar(bad)


def test_format_scalar():
    assert format_scalar(Fraction(4, 2)) == 2
    assert format_scalar(Fraction(-3, 6)) == "-1/2"


polys = st.lists(fractions, min_size=1, max_size=4).map(lambda c: TruncPoly(c, 3))


@given(polys, polys, polys)
def test_truncpoly_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == TruncPoly([], 3)


def test_truncpoly_truncates():
    t = TruncPoly.t(2)
    assert t * t == TruncPoly([0, 0, 1], 2)
    assert not (t * t * t)
    assert (1 + t) * (1 - t) == 1 - t * t
    assert (t * 3)[1] == 3


def test_tensor_term_language_matches_loops():
    rng = random.Random(5)
    n = 2
    B = Tensor.from_function((n, n, n), n, lambda i, j, k: [rng.randint(-1, 1) for _ in range(n)])
    M = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    got = ap(B, ap(M, "a"), "b", ap(B, "x", "y", "z")).over("abxyz")
    e = [tuple(int(a == b) for a in range(n)) for b in range(n)]
    for i, j, k, l, m in itertools.product(range(n), repeat=5):
        assert got(e[i], e[j], e[k], e[l], e[m]) == B(M @ e[i], e[j], B(e[k], e[l], e[m]))


def test_term_rejects_repeated_variables():
    B = Tensor.zero((2, 2, 2), 2)
    with pytest.raises(ValueError):
        ap(B, "x", "x", "y")


def test_tensor_flat_round_trip_and_reorder():
    t = Tensor((2, 3), 2, {(0, 1, 1): Fraction(2), (1, 2, 0): Fraction(-1)})
    assert Tensor.from_flat((2, 3), 2, t.flat()) == t
    assert t.reorder((1, 0)).reorder((1, 0)) == t
    assert (t - t).is_zero() and t.scale(0).is_zero()
