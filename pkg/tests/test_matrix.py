"""Exact dense linear algebra over field contexts."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrlrc.ff import field_ctx
from mrlrc.matrix import (
    DimensionMismatch, IndexOutOfRange, MatrixF, MixedFields,
    NotInvertibleOnPivots, Singular, block_diag, srmat_dumps, srmat_loads,
)

F2 = field_ctx(2)
F3 = field_ctx(3)
F4 = field_ctx(2, 2)
F9 = field_ctx(3, 2)


def random_matrix(ctx, rows, cols, rnd):
    return MatrixF(ctx, [[rnd.randrange(ctx.order) for _ in range(cols)]
                         for _ in range(rows)])


def test_rank_examples():
    assert MatrixF.identity(F3, 3).rank() == 3
    assert MatrixF.zeros(F3, 2, 4).rank() == 0
    assert MatrixF(F3, [[1, 2], [2, 1]]).rank() == 1  # row2 = 2*row1 in GF(3)


def test_rank_transpose_invariance():
    rnd = random.Random(99)
    for ctx in (F3, F4, F9):
        for _ in range(350):
            m = random_matrix(ctx, rnd.randrange(1, 9), rnd.randrange(1, 9), rnd)
            assert m.rank() == m.transpose().rank()


def test_solve_unique_examples():
    i3 = MatrixF.identity(F3, 3)
    assert i3.solve_unique((1, 2, 0)) == (1, 2, 0)
    assert MatrixF.zeros(F3, 2, 1).solve_unique((0, 0)) is None  # kernel nontrivial
    assert MatrixF(F3, [[1], [2]]).solve_unique((2, 1)) == (2,)
    # inconsistent overdetermined system has no unique solution
    assert MatrixF(F3, [[1], [1]]).solve_unique((1, 2)) is None
    with pytest.raises(DimensionMismatch):
        MatrixF(F3, [[1, 2]]).solve_unique((1,))


def test_restrict_columns():
    m = MatrixF(F3, [[1, 2, 0], [0, 1, 2]])
    assert m.restrict_columns([1, 2, 3]) == m
    empty = m.restrict_columns([])
    assert (empty.rows, empty.cols) == (2, 0)
    sub = m.restrict_columns([1, 3])
    assert sub.data == ((1, 0), (0, 2))
    with pytest.raises(IndexOutOfRange):
        m.restrict_columns([0])
    with pytest.raises(IndexOutOfRange):
        m.restrict_columns([4])


def test_invert_examples():
    assert MatrixF.identity(F3, 2).invert() == MatrixF.identity(F3, 2)
    assert MatrixF(F3, [[2]]).invert() == MatrixF(F3, [[2]])
    m = MatrixF(F2, [[1, 1], [0, 1]])
    assert m.invert() == m
    assert m.mul(m) == MatrixF.identity(F2, 2)
    with pytest.raises(Singular):
        MatrixF(F3, [[1, 2], [2, 1]]).invert()


def test_invert_involution_and_kernel():
    rnd = random.Random(5)
    for _ in range(200):
        n = rnd.randrange(1, 6)
        m = random_matrix(F9, n, n, rnd)
        try:
            mi = m.invert()
        except Singular:
            assert m.rank() < n
            continue
        assert mi.invert() == m
        assert m.mul(mi) == MatrixF.identity(F9, n)


def test_right_kernel():
    assert MatrixF.identity(F3, 3).right_kernel().cols == 0
    z = MatrixF.zeros(F3, 1, 2)
    assert z.right_kernel().cols == 2
    k = MatrixF(F3, [[1, 2]]).right_kernel()
    assert k.cols == 1
    assert k.column(0) in {(1, 1), (2, 2)}
    rnd = random.Random(17)
    for _ in range(150):
        m = random_matrix(F4, rnd.randrange(1, 6), rnd.randrange(1, 7), rnd)
        ker = m.right_kernel()
        assert ker.cols == m.cols - m.rank()
        if ker.cols:
            assert m.mul(ker).is_zero()


def test_block_diag():
    b = MatrixF(F3, [[2]])
    assert block_diag([b]) == b
    two = block_diag([MatrixF(F3, [[1]]), MatrixF(F3, [[2]])])
    assert two.data == ((1, 0), (0, 2))
    big = block_diag([MatrixF.zeros(F3, 2, 3), MatrixF(F3, [[1]])])
    assert (big.rows, big.cols) == (3, 4)
    with pytest.raises(MixedFields):
        block_diag([MatrixF(F3, [[1]]), MatrixF(F2, [[1]])])


def test_block_diag_rank_is_sum():
    rnd = random.Random(3)
    for _ in range(100):
        blocks = [random_matrix(F3, rnd.randrange(1, 4), rnd.randrange(1, 4), rnd)
                  for _ in range(rnd.randrange(1, 4))]
        assert block_diag(blocks).rank() == sum(b.rank() for b in blocks)


def test_systematic_form():
    m = MatrixF(F3, [[1, 0, 2], [0, 1, 1]])
    assert m.systematic_form([1, 2]) == m
    assert MatrixF(F3, [[2, 1]]).systematic_form([1]) == MatrixF(F3, [[1, 2]])
    with pytest.raises(NotInvertibleOnPivots):
        MatrixF(F3, [[0, 1], [0, 2]]).systematic_form([1, 2])
    # row space is preserved
    rnd = random.Random(11)
    for _ in range(50):
        m = random_matrix(F9, 2, 4, rnd)
        if m.restrict_columns([1, 2]).rank() < 2:
            continue
        s = m.systematic_form([1, 2])
        assert MatrixF(F9, m.data + s.data).rank() == m.rank()


def test_restriction_rank_monotone():
    rnd = random.Random(23)
    for _ in range(100):
        m = random_matrix(F3, 4, 6, rnd)
        cols = sorted(rnd.sample(range(1, 7), rnd.randrange(0, 7)))
        assert m.restrict_columns(cols).rank() <= m.rank()


def test_det_matches_rank():
    rnd = random.Random(41)
    for _ in range(200):
        n = rnd.randrange(1, 5)
        m = random_matrix(F4, n, n, rnd)
        assert (m.det() != 0) == (m.rank() == n)


def test_mul_shapes_and_mixed_fields():
    a = MatrixF(F3, [[1, 2]])
    b = MatrixF(F3, [[1], [1]])
    assert a.mul(b).data == ((0,),)
    with pytest.raises(DimensionMismatch):
        b.mul(b)
    with pytest.raises(MixedFields):
        a.mul(MatrixF(F2, [[1], [1]]))


def test_srmat_round_trip():
    rnd = random.Random(8)
    for ctx in (F2, F3, F9, field_ctx(2, 8)):
        m = random_matrix(ctx, 3, 5, rnd)
        text = srmat_dumps(m)
        assert text.startswith(f"srmat p={ctx.p} e={ctx.e} rows=3 cols=5\n")
        assert srmat_loads(text) == m
        assert srmat_dumps(srmat_loads(text)) == text  # bit-exact round trip


def test_srmat_rejects_garbage():
    with pytest.raises(ValueError):
        srmat_loads("not a matrix\n1 2 3\n")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(0, 8), min_size=3, max_size=3),
                min_size=2, max_size=5))
def test_kernel_annihilates_hypothesis(rows):
    m = MatrixF(F9, rows)
    ker = m.right_kernel()
    if ker.cols:
        assert m.mul(ker).is_zero()
    assert ker.cols + m.rank() == m.cols
