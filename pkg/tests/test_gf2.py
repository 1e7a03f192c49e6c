import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from kronholm.gf2 import (
    gf2_cokernel_dim,
    gf2_is_invertible,
    gf2_kernel_dim,
    gf2_rank,
)


def test_rank_examples():
    assert gf2_rank([[1, 1], [1, 1]]) == 1
    assert gf2_rank(np.eye(3, dtype=np.uint8)) == 3
    assert gf2_rank(np.zeros((0, 4), dtype=np.uint8)) == 0


def test_empty_shapes():
    empty = np.zeros((0, 0), dtype=np.uint8)
    assert gf2_kernel_dim(empty) == 0
    assert gf2_cokernel_dim(empty) == 0
    assert gf2_kernel_dim(np.zeros((0, 3), dtype=np.uint8)) == 3
    assert gf2_cokernel_dim(np.zeros((2, 0), dtype=np.uint8)) == 2


def test_invertible():
    assert gf2_is_invertible([[1, 1], [0, 1]])
    assert not gf2_is_invertible([[1, 1], [1, 1]])
    assert not gf2_is_invertible([[1, 0, 1]])


shapes = st.tuples(st.integers(0, 12), st.integers(0, 12))
matrices = shapes.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_nullity(mat):
    rows, cols = mat.shape
    rank = gf2_rank(mat)
    assert rank <= min(rows, cols)
    assert rank + gf2_kernel_dim(mat) == cols
    assert rank + gf2_cokernel_dim(mat) == rows
    assert gf2_rank(mat.T) == rank
