"""Linear algebra over F2 on small dense numpy matrices."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np


def to_gf2(matrix) -> np.ndarray:
    mat = np.array(matrix, dtype=np.uint8)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1) if mat.size else mat.reshape(0, 0)
    return mat % 2


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def gf2_row_reduce(matrix) -> RowReduceResult:
    mat = to_gf2(matrix).copy()
    m, n = mat.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        hits = np.nonzero(mat[:, col])[0]
        for r in hits:
            if r != row:
                mat[r, :] ^= mat[row, :]
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def gf2_rank(matrix) -> int:
    mat = to_gf2(matrix)
    if mat.size == 0:
        return 0
    return gf2_row_reduce(mat).rank


def gf2_kernel_dim(matrix) -> int:
    """dim ker = #cols - rank"""
    mat = to_gf2(matrix)
    return mat.shape[1] - gf2_rank(mat)


def gf2_cokernel_dim(matrix) -> int:
    mat = to_gf2(matrix)
    return mat.shape[0] - gf2_rank(mat)


def gf2_is_invertible(matrix) -> bool:
    mat = to_gf2(matrix)
    m, n = mat.shape
    return m == n and gf2_rank(mat) == n


def gf2_matmul(matrix, vector) -> np.ndarray:
    mat = to_gf2(matrix)
    vec = np.array(vector, dtype=np.uint8) % 2
    return (mat.astype(np.int64) @ vec.astype(np.int64) % 2).astype(np.uint8)
