# File: construct/seeds.py
# Description: Built-in ingredient designs and fixture generators.
# - SEED_BLOCKS: TS₃(7) and TS₃(9) with nonsingular N₂ (the v=5 seed is the complete design)
# - Steiner triple systems (Bose / Skolem) and prime-order affine planes
# Functions:
# - seed()
# - seed_catalog()
# - fano_plane()
# - steiner_triple_system()
# - affine_plane()

import sympy

from design.errors import DesignStructureError
from design.model import Design, complete_triple_design, make_design

SEED_BLOCKS = {
    7: (
        (0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 3, 6), (0, 4, 5),
        (0, 4, 6), (0, 5, 6), (1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
        (1, 5, 6), (2, 3, 4), (2, 3, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6),
    ),
    9: (
        (0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 3, 6), (0, 4, 6), (0, 4, 7), (0, 5, 7),
        (0, 5, 8), (0, 6, 8), (0, 7, 8), (1, 2, 4), (1, 2, 5), (1, 3, 6), (1, 3, 8), (1, 4, 7), (1, 5, 6),
        (1, 5, 8), (1, 6, 7), (1, 7, 8), (2, 3, 4), (2, 3, 7), (2, 4, 8), (2, 5, 6), (2, 6, 7), (2, 6, 8),
        (2, 7, 8), (3, 4, 5), (3, 4, 8), (3, 5, 7), (3, 5, 8), (3, 6, 7), (4, 5, 6), (4, 5, 7), (4, 6, 8),
    ),
}

SEED_ORDERS = (5, 7, 9)


def seed(u) -> Design:
    """
    Returns the built-in TS₃(u) with nonsingular N₂.

    Args:
        u (int): 5, 7 or 9

    Returns:
        Design: The catalog entry (u=5 is the complete design on 5 points)
    """
    if u == 5:
        return complete_triple_design(5)
    if u not in SEED_BLOCKS:
        raise DesignStructureError(f"no built-in seed of order {u}; available: {SEED_ORDERS}")
    return Design(v=u, lam=3, block_sizes=frozenset({3}), blocks=SEED_BLOCKS[u])


def seed_catalog() -> dict:
    return {u: seed(u) for u in SEED_ORDERS}


def fano_plane() -> Design:
    """The cyclic STS(7): {0,1,3} + i mod 7."""
    return make_design(7, 1, ((i, (i + 1) % 7, (i + 3) % 7) for i in range(7)))


def _bose(v) -> Design:
    # Idempotent commutative quasigroup x∘y = (x+y)(n+1) mod 2n+1
    n = (v - 3) // 6
    m = 2 * n + 1

    def point(x, i):
        return x + i * m

    blocks = [(point(x, 0), point(x, 1), point(x, 2)) for x in range(m)]
    for i in range(3):
        for x in range(m):
            for y in range(x + 1, m):
                z = ((x + y) * (n + 1)) % m
                blocks.append((point(x, i), point(y, i), point(z, (i + 1) % 3)))
    return make_design(v, 1, blocks)


def _skolem(v) -> Design:
    # Half-idempotent commutative quasigroup of order 2n from Z_2n with symbols renamed
    n = (v - 1) // 6
    m = 2 * n
    infinity = v - 1

    def point(x, i):
        return x + i * m

    def product(x, y):
        s = (x + y) % m
        return s // 2 if s % 2 == 0 else n + s // 2

    blocks = [(point(x, 0), point(x, 1), point(x, 2)) for x in range(n)]
    for x in range(n):
        for i in range(3):
            blocks.append((infinity, point(x + n, i), point(x, (i + 1) % 3)))
    for i in range(3):
        for x in range(m):
            for y in range(x + 1, m):
                blocks.append((point(x, i), point(y, i), point(product(x, y), (i + 1) % 3)))
    return make_design(v, 1, blocks)


def steiner_triple_system(v) -> Design:
    """
    An STS(v) for any v ≡ 1 or 3 (mod 6): Bose's construction for v ≡ 3,
    Skolem's for v ≡ 1.
    """
    if v == 3:
        return make_design(3, 1, [(0, 1, 2)])
    if v < 3 or v % 6 not in (1, 3):
        raise DesignStructureError(f"no Steiner triple system of order {v} (need v ≡ 1,3 mod 6)")
    return _bose(v) if v % 6 == 3 else _skolem(v)


def affine_plane(q) -> Design:
    """
    AG(2,q) for prime q as a PBD(q²,{q}): point (x,y) is x*q + y; lines are
    {(x, ax+b)} for all a, b plus the q vertical lines.

    Args:
        q (int): A prime

    Returns:
        Design: q² points, q²+q blocks of size q, λ=1
    """
    if not sympy.isprime(q):
        raise DesignStructureError(f"affine planes are built for prime orders only, got {q}")
    blocks = []
    for a in range(q):
        for b in range(q):
            blocks.append([x * q + (a * x + b) % q for x in range(q)])
    for c in range(q):
        blocks.append([c * q + y for y in range(q)])
    return make_design(q * q, 1, blocks, block_sizes={q})
