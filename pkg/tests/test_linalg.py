"""Exact linear algebra, checked against sympy as an independent oracle."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ainfty.linalg import (
    hodge_decomposition, inverse, linear_solve_suite, matmul, matvec, nullspace, rank, rref,
    solve,
)

entries = st.integers(-3, 3).map(Fraction)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(lambda m: st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m)))


def to_sympy(mat):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in mat])


@settings(max_examples=150)
@given(matrices())
def test_rank_and_rref_match_sympy(mat):
    S = to_sympy(mat)
    assert rank(mat) == S.rank()
    r, pivots = rref(mat)
    R, P = S.rref()
    assert list(pivots) == list(P)
    assert to_sympy(r) == R


@settings(max_examples=150)
@given(matrices())
def test_nullspace_dimension_and_kernel(mat):
    ns = nullspace(mat)
    n = len(mat[0])
    assert len(ns) == n - to_sympy(mat).rank()
    for v in ns:
        assert not any(matvec(mat, v))


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_or_singular(mat):
    S = to_sympy(mat)
    if S.det() == 0:
        with pytest.raises(ValueError):
            inverse(mat)
    else:
        assert to_sympy(inverse(mat)) == S.inv()


@settings(max_examples=100)
@given(matrices(), st.lists(entries, min_size=4, max_size=4))
def test_solve_agrees_with_consistency(mat, rhs):
    b = rhs[:len(mat)]
    x = solve(mat, b)
    S, B = to_sympy(mat), to_sympy([[v] for v in b])
    consistent = S.rank() == S.row_join(B).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert matmul(mat, [[v] for v in x], len(x)) == [[v] for v in b]


def test_linear_solve_suite_counts():
    s = linear_solve_suite([[1, 2, 3], [2, 4, 6]])
    assert (s.rank, len(s.nullspace), len(s.complement)) == (1, 2, 1)


def test_hodge_decomposition_of_exact_complex():
    # Q -> Q^2 -> Q with both differentials of rank 1 is exact
    dims = {0: 1, 1: 2, 2: 1}
    diff = {0: [[Fraction(1)], [Fraction(1)]], 1: [[Fraction(1), Fraction(-1)]]}
    hd = hodge_decomposition(dims, diff)
    assert [len(hd[d].reps) for d in (0, 1, 2)] == [0, 0, 0]


@settings(max_examples=60)
@given(matrices(3, 3))
def test_hodge_cohomology_dimension_matches_rank_formula(mat):
    # V_0 --D--> V_1, so dim H^0 = n - rk D and dim H^1 = m - rk D
    m, n = len(mat), len(mat[0])
    hd = hodge_decomposition({0: n, 1: m}, {0: mat})
    r = to_sympy(mat).rank()
    assert (len(hd[0].reps), len(hd[1].reps)) == (n - r, m - r)
