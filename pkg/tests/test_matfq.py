from __future__ import annotations

import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hermself import matfq
from hermself.gf import GF

F4 = GF(2)
F9 = GF(3)


def brute_span(F, rows):
    rows = np.atleast_2d(rows)
    out = set()
    for coeffs in itertools.product(range(F.order), repeat=len(rows)):
        v = np.zeros(rows.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = F.add(v, F.mul(c, r))
        out.add(tuple(int(x) for x in v))
    return out


def matrices(max_rows=3, max_cols=4):
    @st.composite
    def build(draw):
        F = draw(st.sampled_from([F4, F9]))
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        vals = draw(st.lists(st.integers(0, F.order - 1), min_size=r * c, max_size=r * c))
        return F, np.array(vals, dtype=np.int64).reshape(r, c)

    return build()


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_equals_log_of_span_size(arg):
    F, A = arg
    size = len(brute_span(F, A))
    r = matfq.rank(F, A)
    assert F.order**r == size


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_preserves_row_space(arg):
    F, A = arg
    R, piv = matfq.rref(F, A)
    assert brute_span(F, A) == brute_span(F, R)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_right_kernel_is_exact_annihilator(arg):
    F, A = arg
    K = matfq.right_kernel(F, A)
    assert len(K) == A.shape[1] - matfq.rank(F, A)
    if len(K):
        assert np.all(matfq.matmul(F, A, K.T) == 0)
        assert matfq.rank(F, K) == len(K)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_left_kernel_annihilates_from_the_left(arg):
    F, A = arg
    L = matfq.left_kernel(F, A)
    assert len(L) == A.shape[0] - matfq.rank(F, A)
    if len(L):
        assert np.all(matfq.matmul(F, L, A) == 0)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=2, max_cols=3))
def test_in_span_matches_enumeration(arg):
    F, A = arg
    span = brute_span(F, A)
    for v in itertools.product(range(F.order), repeat=A.shape[1]):
        assert matfq.in_span(F, A, np.array(v)) == (v in span)


def test_kernel_basis_is_canonical():
    F = F4
    A = np.array([[1, 1, 0, 0], [0, 0, 1, 1]])
    B = F.mul(F.e, A[::-1])  # same row space, different generator
    assert np.array_equal(matfq.right_kernel(F, A), matfq.right_kernel(F, B))
    assert matfq.same_span(F, A, B)


def test_empty_and_zero_matrices():
    F = F9
    Z = np.zeros((2, 3), dtype=np.int64)
    assert matfq.rank(F, Z) == 0
    assert matfq.right_kernel(F, Z).shape == (3, 3)
    assert matfq.row_basis(F, Z).shape == (0, 3)
    assert matfq.in_span(F, Z, np.zeros(3, dtype=np.int64))


def test_subfield_matrix_check():
    assert matfq.is_subfield_matrix(F9, np.array([[0, 1, 2]]))
    assert not matfq.is_subfield_matrix(F9, np.array([[0, 1, F9.e]]))
