"""Shared fixtures: built-in seeds, small Steiner systems and the v=7 census."""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analysis.census import enumerate_ts
from construct.seeds import affine_plane, fano_plane, seed
from design.model import make_design, scale_copies

# u,v,x,y,a,b = 0,1,2,3,4,5: the quadrilateral and its a<->b image
QUADRILATERAL_SIDE_A = [(0, 1, 4), (2, 3, 4), (0, 2, 5), (1, 3, 5)]
QUADRILATERAL_SIDE_B = [(0, 1, 5), (2, 3, 5), (0, 2, 4), (1, 3, 4)]


@pytest.fixture
def seed5():
    return seed(5)


@pytest.fixture
def seed7():
    return seed(7)


@pytest.fixture
def seed9():
    return seed(9)


@pytest.fixture
def fano():
    return fano_plane()


@pytest.fixture
def tripled_fano():
    return scale_copies(fano_plane(), 3)


@pytest.fixture
def tripled_sts9():
    return scale_copies(affine_plane(3), 3)


@pytest.fixture
def quadrilateral_host():
    return make_design(6, 2, QUADRILATERAL_SIDE_A + QUADRILATERAL_SIDE_B)


@pytest.fixture(scope="session")
def census7():
    return enumerate_ts(7, 3)
