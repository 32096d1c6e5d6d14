from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from discrim.exact_linalg import (
    DimensionError,
    RationalMatrix,
    RowReducer,
    left_kernel_basis,
    rank,
    right_kernel_basis,
    solve_rowspan_membership,
)

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix.from_dense(data, ncols=c)


@pytest.mark.parametrize(
    "data, expected",
    [
        ([[1, 1], [1, 1]], 1),
        ([[0] * 4] * 3, 0),
        ([[0, 1, 0], [0, 1, 0]], 1),
    ],
)
def test_rank_examples(data, expected):
    assert rank(RationalMatrix.from_dense(data)) == expected


def test_left_kernel_examples():
    assert left_kernel_basis(RationalMatrix.from_dense([[0, 1, 0], [0, 1, 0]])) == [[1, -1]]
    assert left_kernel_basis(RationalMatrix.identity(3)) == []
    ker = left_kernel_basis(RationalMatrix.zeros(2, 3))
    assert rank(RationalMatrix.from_dense(ker)) == 2


def test_rowspan_membership_examples():
    assert solve_rowspan_membership([1, 1], RationalMatrix.from_dense([[1, 1]]))
    assert not solve_rowspan_membership([1, 0], RationalMatrix.from_dense([[0, 1]]))
    assert solve_rowspan_membership([2, -2], RationalMatrix.from_dense([[1, -1], [1, -1]]))


def test_membership_rejects_wrong_length():
    with pytest.raises(DimensionError):
        solve_rowspan_membership([1, 2, 3], RationalMatrix.from_dense([[1, 1]]))


def test_getitem_out_of_range():
    with pytest.raises(IndexError):
        RationalMatrix.identity(2)[2, 0]


def test_entries_are_exact_fractions():
    M = RationalMatrix.from_dense([[Fraction(1, 3), 2]])
    assert M[0, 0] == Fraction(1, 3)
    assert M.scale(3)[0, 0] == 1


@given(matrices())
def test_rank_nullity(M):
    assert len(left_kernel_basis(M)) + rank(M) == M.nrows
    assert len(right_kernel_basis(M)) + rank(M) == M.ncols


@given(matrices())
def test_rank_of_transpose(M):
    assert rank(M) == rank(M.T)


@given(matrices())
def test_left_kernel_annihilates(M):
    for v in left_kernel_basis(M):
        assert not M.apply_row(v)


@given(matrices())
def test_rank_matches_incremental_reducer(M):
    red = RowReducer(M.ncols)
    for r in M.rows():
        red.add(r)
    assert red.rank == rank(M)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_rows_combinations_are_members(M, coeffs):
    v = M.apply_row(coeffs[: M.nrows])
    dense = [v.get(j, 0) for j in range(M.ncols)]
    assert solve_rowspan_membership(dense, M)


@given(matrices(), st.integers(-4, 4).filter(bool))
def test_rank_invariant_under_nonzero_scaling(M, c):
    assert rank(M.scale(c)) == rank(M)


@given(matrices())
def test_json_roundtrip(M):
    assert RationalMatrix.from_json(M.to_json()) == M


@given(matrices(4, 4), matrices(4, 4))
def test_product_rank_bound(A, B):
    if A.ncols != B.nrows:
        return
    assert rank(A @ B) <= min(rank(A), rank(B))
