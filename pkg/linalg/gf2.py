# File: linalg/gf2.py
# Description: GF(2) rank with matrix rows packed into Python integer bitsets.
# Functions:
# - pack_rows()
# - gf2_rank_packed()
# - gf2_rank()

import numpy as np


def pack_rows(matrix) -> list:
    """Packs each row of a 0/1 (or integer, reduced mod 2) matrix into an int bitset."""
    bits = np.asarray(matrix) % 2
    packed = []
    for row in bits:
        word = 0
        for j in np.flatnonzero(row):
            word |= 1 << int(j)
        packed.append(word)
    return packed


def gf2_rank_packed(rows) -> int:
    """
    Rank of a list of bitset rows. Each pivot is the lowest set bit of the
    reduced row; rows are reduced against the basis in insertion order.
    """
    basis = {}
    for word in rows:
        while word:
            low = word & -word
            if low not in basis:
                basis[low] = word
                break
            word ^= basis[low]
    return len(basis)


def gf2_rank(matrix) -> int:
    """Compute rank over GF(2)."""
    return gf2_rank_packed(pack_rows(matrix))
