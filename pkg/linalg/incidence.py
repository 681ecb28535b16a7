# File: linalg/incidence.py
# Description: Higher incidence matrices N_s (s-subsets versus blocks) and the Gram matrix N₂N₂ᵀ.
#
# Rows are s-subsets in colexicographic order; columns follow the design's block order.
# Functions:
# - subset_rank()
# - subset_unrank()
# - build_ns()
# - gram()
# - satisfies_polynomial()
# - export_matrix()
# - parse_matrix()

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Tuple

import numpy as np

from design.errors import DesignFormatError, MatrixError
from design.model import Design


def subset_rank(subset, v) -> int:
    """
    Colexicographic rank of a strictly increasing subset of [0, v).

    Example: for v=5, s=2 the order is {0,1}, {0,2}, {1,2}, {0,3}, ... so {0,2} -> 1.
    """
    subset = tuple(subset)
    if any(b <= a for a, b in zip(subset, subset[1:])):
        raise MatrixError(f"subset {subset} is not strictly increasing")
    if subset and (subset[0] < 0 or subset[-1] >= v):
        raise MatrixError(f"subset {subset} is not inside [0, {v})")
    return sum(comb(x, i + 1) for i, x in enumerate(subset))


def subset_unrank(index, s, v) -> Tuple[int, ...]:
    """Inverse of subset_rank for s-subsets of [0, v)."""
    if not 0 <= index < comb(v, s):
        raise MatrixError(f"rank {index} out of range for {s}-subsets of {v} points")
    subset = []
    for i in range(s, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= index:
            c += 1
        subset.append(c)
        index -= comb(c, i)
    return tuple(reversed(subset))


@dataclass(frozen=True)
class IncidenceMatrix:
    """
    Sparse 0/1 inclusion matrix of s-subsets versus blocks, stored column-major:
    columns[j] lists the (sorted) row indices of the s-subsets inside block j.
    """
    s: int
    v: int
    columns: Tuple[Tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return comb(self.v, self.s)

    @property
    def cols(self) -> int:
        return len(self.columns)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def to_array(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=np.int64)
        for j, column in enumerate(self.columns):
            dense[list(column), j] = 1
        return dense

    def row_sums(self) -> np.ndarray:
        sums = np.zeros(self.rows, dtype=np.int64)
        for column in self.columns:
            sums[list(column)] += 1
        return sums

    def column_sums(self) -> np.ndarray:
        return np.array([len(column) for column in self.columns], dtype=np.int64)


def build_ns(d: Design, s) -> IncidenceMatrix:
    """
    Builds N_s for a design.

    Args:
        d (Design): Source design
        s (int): Subset size, 1 <= s <= largest block size

    Returns:
        IncidenceMatrix: C(v,s) x b inclusion matrix
    """
    if not 1 <= s <= d.max_block_size:
        raise MatrixError(f"s={s} outside [1, {d.max_block_size}]; N_s would be all zero")
    columns = tuple(
        tuple(sorted(subset_rank(sub, d.v) for sub in combinations(block, s)))
        for block in d.blocks
    )
    return IncidenceMatrix(s=s, v=d.v, columns=columns)


def gram(m: IncidenceMatrix) -> np.ndarray:
    """
    Exact N₂N₂ᵀ. Entry (P,Q) counts the blocks containing both pairs P and Q.

    Returns:
        np.ndarray: C(v,2) x C(v,2) int64 matrix
    """
    if m.s != 2:
        raise MatrixError(f"gram expects N_2, got N_{m.s}")
    dense = m.to_array()
    return dense @ dense.T


def satisfies_polynomial(matrix, roots) -> bool:
    """True iff the product of (M - r I) over the given integer roots is the zero matrix."""
    exact = np.array(matrix, dtype=object)
    if exact.ndim != 2 or exact.shape[0] != exact.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {exact.shape}")
    identity = np.identity(exact.shape[0], dtype=object)
    product = identity
    for r in roots:
        product = product.dot(exact - r * identity)
    return not np.any(product != 0)


def export_matrix(matrix, field="integer") -> str:
    """
    Sparse triple text: "rows cols field", one "i j value" line per nonzero
    in row-major order, then the terminator "-1 -1 0".
    """
    if isinstance(matrix, IncidenceMatrix):
        entries = sorted((i, j) for j, column in enumerate(matrix.columns) for i in column)
        lines = [f"{matrix.rows} {matrix.cols} {field}"]
        lines.extend(f"{i} {j} 1" for i, j in entries)
    else:
        dense = np.asarray(matrix)
        rows, cols = dense.shape
        lines = [f"{rows} {cols} {field}"]
        for i, j in zip(*np.nonzero(dense)):
            lines.append(f"{i} {j} {int(dense[i, j])}")
    lines.append("-1 -1 0")
    return "\n".join(lines) + "\n"


def parse_matrix(text) -> np.ndarray:
    """Reads the sparse triple format back into an exact (object dtype) integer matrix."""
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not lines or len(lines[0]) != 3:
        raise DesignFormatError("matrix text needs a 'rows cols field' header")
    try:
        rows, cols = int(lines[0][0]), int(lines[0][1])
        matrix = np.zeros((rows, cols), dtype=object)
        for parts in lines[1:]:
            i, j, value = (int(x) for x in parts)
            if (i, j) == (-1, -1):
                return matrix
            if not (0 <= i < rows and 0 <= j < cols):
                raise DesignFormatError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            matrix[i, j] = value
    except ValueError as e:
        raise DesignFormatError(f"malformed matrix entry: {e}") from e
    raise DesignFormatError("matrix text is missing the '-1 -1 0' terminator")
