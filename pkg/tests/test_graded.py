from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ainfty.graded import (
    GradedMap, GradedVectorSpace, MultilinearMap, add_into, format_scalar, normalize,
    parse_scalar, table_diff,
)

fractions = st.fractions(max_denominator=50).map(Fraction)


def test_normalize_keeps_integers_as_int():
    assert type(normalize(Fraction(4, 2))) is int
    assert normalize(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(TypeError):
        normalize(0.5)


@given(fractions)
def test_scalar_text_round_trip(x):
    text = format_scalar(x)
    assert parse_scalar(text) == x
    assert ("/" in text) == (x.denominator != 1)


def test_scalar_format_examples():
    assert format_scalar(Fraction(-3, 6)) == "-1/2"
    assert format_scalar(5) == "5"
    assert parse_scalar(" 7/14 ") == Fraction(1, 2)


@given(st.dictionaries(st.integers(0, 5), fractions), st.dictionaries(st.integers(0, 5), fractions))
def test_add_into_drops_zeros_and_matches_pointwise_sum(a, b):
    out = add_into(dict((k, v) for k, v in a.items() if v), b)
    for k in set(a) | set(b):
        total = a.get(k, 0) + b.get(k, 0)
        assert out.get(k, 0) == total
    assert all(out.values())


def test_space_is_grouped_by_degree_and_stable():
    V = GradedVectorSpace([("a", 1), ("b", 0), ("c", 1), ("d", 0)])
    assert V.labels == ("b", "d", "a", "c")
    assert V.dims == {0: 2, 1: 2}
    assert V.window == (0, 1)
    assert V.shifted(-1).degree("a") == 0


def test_space_rejects_duplicates_and_window_violations():
    with pytest.raises(ValueError):
        GradedVectorSpace([("a", 0), ("a", 1)])
    with pytest.raises(ValueError):
        GradedVectorSpace([("a", 3)], window=(0, 2))


def test_graded_map_degree_is_enforced():
    V = GradedVectorSpace([("a", 0), ("b", 1)])
    with pytest.raises(ValueError):
        GradedMap(V, V, 1, {"a": {"a": 1}})
    d = GradedMap(V, V, 1, {"a": {"b": 2}})
    assert d.block(0) == [[2]]
    assert d.then(d).is_zero()


@given(st.lists(fractions, min_size=4, max_size=4), st.lists(fractions, min_size=4, max_size=4))
def test_then_is_matrix_product(p, q):
    V = GradedVectorSpace([("x", 0), ("y", 0)])
    f = GradedMap.from_blocks(V, V, 0, {0: [p[:2], p[2:]]})
    g = GradedMap.from_blocks(V, V, 0, {0: [q[:2], q[2:]]})
    A, B = [p[:2], p[2:]], [q[:2], q[2:]]
    BA = [[sum(B[i][k] * A[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert f.then(g).block(0) == BA


def test_multilinear_map_evaluates_linearly():
    m = MultilinearMap(2, 0, {(("x", "y", 1), ("y", "z", 2)): {("x", "z", 3): 1}})
    u = {("x", "y", 1): Fraction(1, 2)}
    v = {("y", "z", 2): 4}
    assert m(u, v) == {("x", "z", 3): 2}
    assert m(u, {}) == {}
    with pytest.raises(ValueError):
        m(u)


def test_table_diff():
    a = {("c",): {"k": 1}}
    b = {("c",): {"k": 1}, ("d",): {"k": 2}}
    assert table_diff(a, b) == {("d",): {"k": -2}}
