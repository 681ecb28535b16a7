# File: analysis/trades.py
# Description: Repeated blocks, quadrilateral trades and the kernel vectors they induce,
# plus the explicit F₂ / F₃ kernel witnesses for triple systems.
# Functions:
# - repeated_blocks()
# - find_quadrilateral_trades()
# - is_trade()
# - trade_to_kernel()
# - repeated_block_witnesses()
# - kernel_trades()
# - pencil_vector()
# - pencil_matrix()
# - gram_f3_witness()

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Tuple

import numpy as np

from design.errors import DesignStructureError
from design.model import Design, validate_pbd
from linalg.incidence import build_ns, subset_rank
from linalg.rank import rational_kernel_basis

Blocks = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Trade:
    """Two different block multisets covering the same pairs with multiplicity."""
    side_a: Blocks
    side_b: Blocks
    support: Tuple[int, ...]


@dataclass(frozen=True)
class KernelWitness:
    """
    An integer vector in a kernel of N₂ (against="n2") or of N₂N₂ᵀ (against="gram").
    Trade vectors are indexed by blocks, pencil vectors by pairs.
    """
    vector: Tuple[int, ...]
    side: str
    field: object
    against: str = "n2"

    def sparse(self) -> str:
        """Nonzero entries as 'index:value' tokens, with explicit sign."""
        return " ".join(f"{i}:{x:+d}" for i, x in enumerate(self.vector) if x)


def _pairs_of(blocks) -> Counter:
    counts = Counter()
    for block in blocks:
        counts.update(combinations(block, 2))
    return counts


def is_trade(side_a, side_b) -> bool:
    return Counter(side_a) != Counter(side_b) and _pairs_of(side_a) == _pairs_of(side_b)


def make_trade(side_a, side_b) -> Trade:
    a = tuple(sorted(tuple(b) for b in side_a))
    b = tuple(sorted(tuple(b) for b in side_b))
    if not is_trade(a, b):
        raise DesignStructureError("sides are equal or cover different pairs; not a trade")
    if b < a:
        a, b = b, a
    support = tuple(sorted({p for block in a + b for p in block}))
    return Trade(side_a=a, side_b=b, support=support)


def repeated_blocks(d: Design):
    """All blocks occurring at least twice, with their multiplicity, in block order."""
    counts = Counter(d.blocks)
    return sorted((block, m) for block, m in counts.items() if m >= 2)


def find_quadrilateral_trades(d: Design):
    """
    Finds every quadrilateral {u,v,a},{x,y,a},{u,x,b},{v,y,b} whose a<->b image
    is also present in the design.

    For a fixed pair a<b the pairs {p,q} with both {p,q,a} and {p,q,b} present form
    a graph; each 4-cycle u-v-y-x of that graph is exactly one such trade.

    Returns:
        list: Trades sorted by their sides
    """
    if not d.is_triple_system():
        raise DesignStructureError("quadrilateral search needs a triple system")
    present = set(d.blocks)

    def has(*points):
        return tuple(sorted(points)) in present

    found = {}
    for a, b in combinations(range(d.v), 2):
        others = [p for p in range(d.v) if p not in (a, b)]
        adjacent = defaultdict(set)
        for p, q in combinations(others, 2):
            if has(p, q, a) and has(p, q, b):
                adjacent[p].add(q)
                adjacent[q].add(p)
        vertices = sorted(p for p in adjacent if len(adjacent[p]) >= 2)
        for s0, s1, s2, s3 in combinations(vertices, 4):
            for u, v, y, x in ((s0, s1, s2, s3), (s0, s1, s3, s2), (s0, s2, s1, s3)):
                if v in adjacent[u] and y in adjacent[v] and x in adjacent[y] and u in adjacent[x]:
                    side_a = [(u, v, a), (x, y, a), (u, x, b), (v, y, b)]
                    side_b = [(u, v, b), (x, y, b), (u, x, a), (v, y, a)]
                    trade = make_trade([sorted(t) for t in side_a], [sorted(t) for t in side_b])
                    found[(trade.side_a, trade.side_b)] = trade
    return [found[key] for key in sorted(found)]


def _occurrences(d: Design):
    columns = defaultdict(deque)
    for j, block in enumerate(d.blocks):
        columns[block].append(j)
    return columns


def trade_to_kernel(t: Trade, d: Design) -> KernelWitness:
    """
    Right-kernel vector of N₂(d): +1 on the columns holding side_a, -1 on
    those holding side_b. Each side block is matched to its own column, so
    repeated blocks give distinct embeddings.
    """
    if not is_trade(t.side_a, t.side_b):
        raise DesignStructureError("sides are equal or cover different pairs; not a trade")
    columns = _occurrences(d)
    vector = [0] * d.num_blocks
    for sign, side in ((1, t.side_a), (-1, t.side_b)):
        for block in side:
            if not columns[tuple(block)]:
                raise DesignStructureError(f"trade block {tuple(block)} is not available in the design")
            vector[columns[tuple(block)].popleft()] = sign
    return KernelWitness(vector=tuple(vector), side="right", field="rational")


def repeated_block_witnesses(d: Design):
    """e_i - e_j for every pair of columns i<j holding the same block."""
    witnesses = []
    for block, cols in sorted(_occurrences(d).items()):
        for i, j in combinations(cols, 2):
            vector = [0] * d.num_blocks
            vector[i], vector[j] = 1, -1
            witnesses.append(KernelWitness(vector=tuple(vector), side="right", field="rational"))
    return witnesses


def kernel_trades(d: Design):
    """
    Trades read off a rational kernel basis of N₂: basis vectors with entries
    in {-1,0,1} whose two sides differ as multisets.
    """
    trades = []
    for vector in rational_kernel_basis(build_ns(d, 2)):
        if not set(vector) <= {-1, 0, 1}:
            continue
        side_a = [d.blocks[j] for j, x in enumerate(vector) if x == 1]
        side_b = [d.blocks[j] for j, x in enumerate(vector) if x == -1]
        if is_trade(side_a, side_b):
            trades.append(make_trade(side_a, side_b))
    return trades


def pencil_vector(x, v) -> KernelWitness:
    """
    Indicator of the v-1 pairs through point x, indexed by pairs in colex
    order. Every triple meets zero or two of these pairs, so it is a left
    kernel vector of N₂ over F₂ for any triple system.
    """
    if not 0 <= x < v:
        raise DesignStructureError(f"point {x} outside [0, {v})")
    vector = [0] * comb(v, 2)
    for y in range(v):
        if y != x:
            vector[subset_rank((min(x, y), max(x, y)), v)] = 1
    return KernelWitness(vector=tuple(vector), side="left", field=2)


def pencil_matrix(v) -> np.ndarray:
    return np.array([pencil_vector(x, v).vector for x in range(v)], dtype=np.int64)


def gram_f3_witness(d: Design) -> KernelWitness:
    """
    The all-ones vector, which N₂N₂ᵀ maps to 3λ·1 for a triple system, hence
    into zero over F₃. Bounds the 3-rank of N₂ by C(v,2)-1 when N₂ is square.
    """
    if not d.is_triple_system() or not d.blocks:
        raise DesignStructureError("gram F3 witness needs a triple system")
    if not validate_pbd(d).is_valid:
        raise DesignStructureError(f"design is not a TS_{d.lam}({d.v})")
    return KernelWitness(vector=(1,) * comb(d.v, 2), side="right", field=3, against="gram")
