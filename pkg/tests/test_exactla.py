from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import sympy_matrix, sympy_rank

from hochpir.exactla import (EchelonBasis, SparseMatrix, fmt, image_basis, induced_operator, inverse,
                             kernel_basis, quotient_representatives, rank, solve)

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def dense(draw, max_rows=6, max_cols=6, sparse=True):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entry = st.one_of(st.just(Fraction(0)), small) if sparse else small
    return [[draw(entry) for _ in range(c)] for _ in range(r)], r, c


def _mat(rows, r, c):
    return SparseMatrix.from_dense(rows, list(range(r)), [f"c{j}" for j in range(c)])


@settings(max_examples=200)
@given(dense())
def test_rank_matches_sympy(data):
    rows, r, c = data
    M = _mat(rows, r, c)
    assert rank(M) == sympy_rank(M)


@settings(max_examples=200)
@given(dense())
def test_kernel_is_kernel(data):
    rows, r, c = data
    M = _mat(rows, r, c)
    K = kernel_basis(M)
    assert K.rank == c - rank(M)
    for v in K.vectors:
        assert M.apply(v) == {}


@settings(max_examples=150)
@given(dense(), st.data())
def test_solve_consistent(data, draw):
    rows, r, c = data
    M = _mat(rows, r, c)
    x0 = {f"c{j}": draw.draw(small) for j in range(c)}
    b = M.apply(x0)
    x = solve(M, b)
    assert x is not None and M.apply(x) == b


def test_solve_inconsistent():
    M = SparseMatrix.from_dense([[1, 1], [2, 2]])
    assert solve(M, {0: 1, 1: 3}) is None


def test_inverse_roundtrip():
    M = SparseMatrix.from_dense([[2, 1, 0], [0, Fraction(1, 3), 1], [1, 0, 1]])
    I = M @ inverse(M)
    assert I.to_dense() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(ZeroDivisionError):
        inverse(SparseMatrix.from_dense([[1, 2], [2, 4]]))


def test_echelon_and_quotient():
    keys = ["a", "b", "c"]
    ker = EchelonBasis(keys, [{"a": 1, "b": 1}, {"c": 2}])
    im = EchelonBasis(keys, [{"b": 1, "a": 1}])
    reps = quotient_representatives(ker, im)
    assert reps.rank == 1
    assert reps.vectors[0] == {"c": 1}
    assert ker.contains({"a": 3, "b": 3, "c": -1})
    assert not ker.contains({"a": 1})


def test_image_basis_and_dense():
    rows = [[1, 2, 3], [2, 4, 6], [0, 0, 1]]
    M = SparseMatrix.from_dense(rows)
    assert image_basis(M).rank == 2
    assert M.to_dense() == rows
    assert sympy_matrix(M).rank() == 2
    assert M.transpose().transpose() == M


def test_induced_operator_identity():
    # d: C1 -> C0 zero, C2 -> C1 hits e1; H1 = span(e2)
    keys = ["e1", "e2"]
    ker = EchelonBasis(keys, [{"e1": 1}, {"e2": 1}])
    im = EchelonBasis(keys, [{"e1": 1}])
    op = SparseMatrix(keys, keys, {"e1": {"e1": 3}, "e2": {"e2": 1, "e1": 5}})
    ind = induced_operator(op, ker, im)
    assert ind.to_dense() == [[1]]


def test_fmt():
    assert fmt(Fraction(-3, 6)) == "-1/2"
    assert fmt(Fraction(4, 2)) == "2"
