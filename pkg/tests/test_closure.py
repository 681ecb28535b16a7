"""
Tests for seeds, fixture generators and PBD-closure composition.

Core claims:
    - each built-in seed is a TS_3(u) with nonsingular N_2
    - composition yields a valid PBD whose rank is the sum of the ingredient ranks
    - composition does not depend on the order of the frame blocks
    - the exception table answers the status query
"""

import random
from collections import Counter
from math import comb

import pytest

from construct.closure import (COMPOSABLE, EXCEPTION_TABLE, POSSIBLE_EXCEPTION, achievable_ranks,
                               compose, compose_mixed, exception_status)
from construct.seeds import (SEED_ORDERS, affine_plane, fano_plane, seed, seed_catalog,
                             steiner_triple_system)
from design.errors import DesignStructureError
from design.model import Design, complete_triple_design, make_design, scale_copies, validate_pbd
from linalg.incidence import build_ns
from linalg.rank import rank_certified


def _tripled_triple():
    return scale_copies(complete_triple_design(3), 3)


# -- seeds and fixtures ----------------------------------------------------------

def test_catalog_orders():
    catalog = seed_catalog()
    assert tuple(catalog) == SEED_ORDERS
    for u, d in catalog.items():
        assert d.v == u
        assert d.lam == 3
        assert d.num_blocks == comb(u, 2)
        assert validate_pbd(d).is_valid


def test_unknown_seed_order():
    with pytest.raises(DesignStructureError):
        seed(11)


def test_fano_plane(fano):
    assert fano.num_blocks == 7
    assert fano.lam == 1
    assert validate_pbd(fano).is_valid


@pytest.mark.parametrize("v", [3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33])
def test_steiner_triple_systems(v):
    d = steiner_triple_system(v)
    assert d.v == v
    assert d.num_blocks == v * (v - 1) // 6
    assert validate_pbd(d).is_valid


@pytest.mark.parametrize("v", [2, 5, 8, 11, 17])
def test_no_steiner_system(v):
    with pytest.raises(DesignStructureError):
        steiner_triple_system(v)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_affine_planes(q):
    d = affine_plane(q)
    assert d.v == q * q
    assert d.num_blocks == q * q + q
    assert d.block_sizes == frozenset({q})
    assert validate_pbd(d).is_valid


def test_affine_plane_of_order_two_is_k4():
    assert sorted(affine_plane(2).blocks) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_affine_plane_needs_prime():
    with pytest.raises(DesignStructureError):
        affine_plane(4)


# -- compose ------------------------------------------------------------------------

def test_compose_affine_plane_with_tripled_triple(tripled_sts9):
    composed = compose(affine_plane(3), {3: _tripled_triple()})
    assert composed.v == 9
    assert composed.lam == 3
    assert validate_pbd(composed).is_valid
    assert Counter(composed.blocks) == Counter(tripled_sts9.blocks)
    assert rank_certified(build_ns(composed, 2)).q_rank == 12


def test_compose_affine_plane_with_seed5():
    composed = compose(affine_plane(5), {5: seed(5)})
    assert composed.v == 25
    assert composed.num_blocks == 300 == comb(25, 2)
    assert validate_pbd(composed).is_valid
    assert rank_certified(build_ns(composed, 2)).nonsingular


def test_compose_with_index_one_ingredient_returns_frame(fano):
    composed = compose(fano, {3: complete_triple_design(3)})
    assert Counter(composed.blocks) == Counter(fano.blocks)


@pytest.mark.parametrize("u,rank", [(5, 10), (7, 21), (9, 36)])
def test_compose_single_block_frame_gives_the_seed(u, rank):
    frame = make_design(u, 1, [tuple(range(u))])
    composed = compose(frame, {u: seed(u)})
    assert (composed.v, composed.lam) == (u, seed(u).lam)
    assert Counter(composed.blocks) == Counter(seed(u).blocks)
    assert rank_certified(build_ns(composed, 2)).q_rank == rank == comb(u, 2)


def test_compose_is_independent_of_block_order():
    frame = affine_plane(5)
    shuffled = list(frame.blocks)
    random.Random(1).shuffle(shuffled)
    reordered = Design(v=frame.v, lam=1, block_sizes=frame.block_sizes, blocks=tuple(shuffled))
    a = compose(frame, {5: seed(5)})
    b = compose(reordered, {5: seed(5)})
    assert Counter(a.blocks) == Counter(b.blocks)


def test_compose_keeps_frame_block_columns_together():
    composed = compose(affine_plane(3), {3: _tripled_triple()})
    for i, frame_block in enumerate(affine_plane(3).blocks):
        assert composed.blocks[3 * i: 3 * i + 3] == (frame_block,) * 3


def test_compose_rejects_frame_with_higher_index(fano):
    with pytest.raises(DesignStructureError):
        compose(scale_copies(fano, 2), {3: _tripled_triple()})


def test_compose_rejects_invalid_frame():
    broken = make_design(7, 1, fano_plane().blocks[1:])
    with pytest.raises(DesignStructureError):
        compose(broken, {3: _tripled_triple()})


def test_compose_needs_seed_for_every_size(fano):
    with pytest.raises(DesignStructureError):
        compose(fano, {5: seed(5)})


def test_compose_checks_seed_order(fano):
    with pytest.raises(DesignStructureError):
        compose(fano, {3: seed(5)})


def test_compose_rejects_mismatched_indices():
    seeds = {3: complete_triple_design(3), 5: seed(5)}
    with pytest.raises(DesignStructureError):
        compose(affine_plane(3), seeds)


def test_compose_rejects_invalid_ingredient(fano):
    bad = Design(v=3, lam=3, block_sizes=frozenset({3}), blocks=((0, 1, 2),))
    with pytest.raises(DesignStructureError):
        compose(fano, {3: bad})


# -- compose_mixed / achievable_ranks ---------------------------------------------------

def test_compose_mixed_seed7_and_tripled_fano():
    frame = affine_plane(7)
    ingredients = [scale_copies(fano_plane(), 3) if i % 2 == 0 else seed(7)
                   for i in range(frame.num_blocks)]
    composed = compose_mixed(frame, ingredients)
    assert composed.v == 49
    assert composed.num_blocks == 56 * 21
    assert validate_pbd(composed).is_valid


def test_compose_mixed_needs_one_ingredient_per_block(fano):
    with pytest.raises(DesignStructureError):
        compose_mixed(fano, [_tripled_triple()] * 6)


def test_compose_mixed_checks_ingredient_order(fano):
    with pytest.raises(DesignStructureError):
        compose_mixed(fano, [_tripled_triple()] * 6 + [seed(5)])


def test_mixed_rank_is_sum_of_ingredient_ranks():
    frame = affine_plane(3)
    ingredients = [_tripled_triple()] * frame.num_blocks
    composed = compose_mixed(frame, ingredients)
    expected = sum(rank_certified(build_ns(d, 2)).q_rank for d in ingredients)
    assert rank_certified(build_ns(composed, 2)).q_rank == expected == 12
    assert expected in achievable_ranks(frame, {3: [1]})


def test_achievable_ranks_even_range():
    assert achievable_ranks(affine_plane(3), {3: [1, 3]}) == list(range(12, 37, 2))


def test_achievable_ranks_for_affine_plane_of_order_seven():
    ranks = achievable_ranks(affine_plane(7), {7: [7, 21]})
    assert ranks[0] == 56 * 7
    assert ranks[-1] == comb(49, 2)
    assert 28 * 7 + 28 * 21 in ranks
    assert all((r - ranks[0]) % 14 == 0 for r in ranks)


def test_achievable_ranks_missing_size(fano):
    with pytest.raises(DesignStructureError):
        achievable_ranks(fano, {5: [10]})


# -- exception status ---------------------------------------------------------------------

@pytest.mark.parametrize("v,expected", [
    (5, COMPOSABLE), (7, COMPOSABLE), (9, COMPOSABLE), (11, POSSIBLE_EXCEPTION),
    (25, COMPOSABLE), (179, POSSIBLE_EXCEPTION), (181, COMPOSABLE), (1001, COMPOSABLE),
])
def test_exception_status(v, expected):
    assert exception_status(v) == expected


@pytest.mark.parametrize("v", [3, 4, 10, 180])
def test_exception_status_needs_odd_v_from_five(v):
    with pytest.raises(DesignStructureError):
        exception_status(v)


def test_exception_table_shape():
    assert len(EXCEPTION_TABLE) == 27
    assert max(EXCEPTION_TABLE) == 179
    assert all(v % 2 == 1 and v > 9 for v in EXCEPTION_TABLE)
