"""
Tests for the higher incidence matrices N_s and the Gram matrix.

Core claims:
    - rows are colex-ranked s-subsets, columns follow block order
    - N_s[i, j] = 1 exactly when subset i lies inside block j
    - row sums of N_2 equal λ, and the Gram diagonal equals λ
    - the sparse text format reproduces the dense matrix
"""

from itertools import combinations
from math import comb

import numpy as np
import pytest

from construct.seeds import affine_plane, steiner_triple_system
from design.errors import DesignFormatError, MatrixError
from design.model import complete_triple_design, make_design
from linalg.incidence import (build_ns, export_matrix, gram, parse_matrix, satisfies_polynomial,
                              subset_rank, subset_unrank)


# -- subset ranking ------------------------------------------------------------

def test_colex_rank_examples():
    assert subset_rank((0, 1), 5) == 0
    assert subset_rank((0, 2), 5) == 1
    assert subset_rank((1, 2), 5) == 2
    assert subset_rank((3, 4), 5) == 9
    assert subset_rank((0, 1, 2), 5) == 0
    assert subset_rank((0, 1, 3), 5) == 1


@pytest.mark.parametrize("v,s", [(5, 1), (5, 2), (7, 3), (9, 2), (9, 4)])
def test_unrank_inverts_rank(v, s):
    ranks = sorted(subset_rank(sub, v) for sub in combinations(range(v), s))
    assert ranks == list(range(comb(v, s)))
    for index in range(comb(v, s)):
        assert subset_rank(subset_unrank(index, s, v), v) == index


def test_rank_rejects_unsorted_subset():
    with pytest.raises(MatrixError):
        subset_rank((2, 1), 5)


def test_unrank_out_of_range():
    with pytest.raises(MatrixError):
        subset_unrank(10, 2, 5)


# -- build_ns ------------------------------------------------------------------

def test_single_block_n2():
    m = build_ns(make_design(3, 1, [(0, 1, 2)]), 2)
    assert m.shape == (3, 1)
    assert m.to_array().tolist() == [[1], [1], [1]]


@pytest.mark.parametrize("fixture", ["seed5", "seed7", "seed9", "tripled_fano"])
def test_n2_row_and_column_sums(fixture, request):
    d = request.getfixturevalue(fixture)
    m = build_ns(d, 2)
    assert m.shape == (comb(d.v, 2), d.num_blocks)
    assert set(m.row_sums().tolist()) == {d.lam}
    assert set(m.column_sums().tolist()) == {3}


def test_n1_is_point_block_incidence(seed7):
    m = build_ns(seed7, 1)
    assert m.shape == (7, 21)
    assert set(m.row_sums().tolist()) == {9}


def test_n3_of_complete_design_is_permutation():
    dense = build_ns(complete_triple_design(5), 3).to_array()
    assert dense.shape == (10, 10)
    assert (dense.sum(axis=0) == 1).all()
    assert (dense.sum(axis=1) == 1).all()


def test_repeated_blocks_give_equal_columns(tripled_fano):
    dense = build_ns(tripled_fano, 2).to_array()
    for j in range(0, 21, 3):
        assert (dense[:, j] == dense[:, j + 1]).all()
        assert (dense[:, j] == dense[:, j + 2]).all()


@pytest.mark.parametrize("s", [1, 2, 3])
def test_entries_match_containment(seed9, s):
    dense = build_ns(seed9, s).to_array()
    for i in range(comb(9, s)):
        subset = set(subset_unrank(i, s, 9))
        for j, block in enumerate(seed9.blocks):
            assert dense[i, j] == int(subset <= set(block))


def test_larger_block_sizes():
    d = affine_plane(3)
    plane5 = affine_plane(5)
    assert build_ns(d, 3).shape == (84, 12)
    assert set(build_ns(plane5, 2).row_sums().tolist()) == {1}
    assert set(build_ns(plane5, 2).column_sums().tolist()) == {10}


@pytest.mark.parametrize("s", [0, 4])
def test_s_outside_block_range(seed7, s):
    with pytest.raises(MatrixError):
        build_ns(seed7, s)


# -- gram ----------------------------------------------------------------------

def test_gram_of_complete_five_point_design(seed5):
    g = gram(build_ns(seed5, 2))
    assert g.shape == (10, 10)
    assert (np.diag(g) == 3).all()
    assert set(g[~np.eye(10, dtype=bool)].tolist()) == {0, 1}
    assert (g.sum(axis=1) == 9).all()
    assert int(np.trace(g)) == 30
    assert int(np.trace(g @ g)) == 150


def test_gram_minimal_polynomial(seed5):
    g = gram(build_ns(seed5, 2))
    assert satisfies_polynomial(g, [1, 4, 9])
    assert not satisfies_polynomial(g, [4, 9])


@pytest.mark.parametrize("fixture", ["seed7", "seed9", "tripled_sts9"])
def test_gram_is_symmetric_with_lambda_diagonal(fixture, request):
    d = request.getfixturevalue(fixture)
    g = gram(build_ns(d, 2))
    assert (g == g.T).all()
    assert (np.diag(g) == d.lam).all()


def test_gram_needs_n2(seed7):
    with pytest.raises(MatrixError):
        gram(build_ns(seed7, 1))


def test_polynomial_needs_square_matrix():
    with pytest.raises(MatrixError):
        satisfies_polynomial(np.zeros((2, 3), dtype=int), [0])


# -- sparse text format ----------------------------------------------------------

def test_export_single_block():
    text = export_matrix(build_ns(make_design(3, 1, [(0, 1, 2)]), 2))
    assert text == "3 1 integer\n0 0 1\n1 0 1\n2 0 1\n-1 -1 0\n"


@pytest.mark.parametrize("v", [7, 9, 13])
def test_export_then_parse_matches_dense(v):
    m = build_ns(steiner_triple_system(v), 2)
    back = parse_matrix(export_matrix(m))
    assert back.shape == m.shape
    assert (back.astype(np.int64) == m.to_array()).all()


def test_export_dense_gram(seed5):
    g = gram(build_ns(seed5, 2))
    text = export_matrix(g, field="gram")
    assert text.splitlines()[0] == "10 10 gram"
    assert (parse_matrix(text).astype(np.int64) == g).all()


def test_parse_missing_terminator():
    with pytest.raises(DesignFormatError):
        parse_matrix("2 2 integer\n0 0 1\n")


def test_parse_entry_out_of_range():
    with pytest.raises(DesignFormatError):
        parse_matrix("2 2 integer\n2 0 1\n-1 -1 0\n")


def test_parse_bad_header():
    with pytest.raises(DesignFormatError):
        parse_matrix("2 2\n-1 -1 0\n")
