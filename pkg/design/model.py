# File: design/model.py
# Description: Core design representation, pair-coverage validation and admissibility arithmetic.
# Functions:
# - make_design()
# - validate_pbd()
# - admissible()
# - complete_triple_design()
# - scale_copies()
# - relabel()

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd
from typing import FrozenSet, Iterable, List, Tuple

from design.errors import DesignStructureError

Block = Tuple[int, ...]
Pair = Tuple[int, int]


@dataclass(frozen=True)
class Design:
    """
    A multiset of blocks over the points 0..v-1 with index λ and admissible
    block sizes K. Repeated blocks are stored as repeated entries, so block j
    is column j of every incidence matrix built from the design.
    """
    v: int
    lam: int
    block_sizes: FrozenSet[int]
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        if self.v < 1:
            raise DesignStructureError(f"point count must be positive, got v={self.v}")
        if self.lam < 1:
            raise DesignStructureError(f"index must be at least 1, got lambda={self.lam}")
        for k in self.block_sizes:
            if k < 2:
                raise DesignStructureError(f"block size {k} is below 2")
        for block in self.blocks:
            if any(b <= a for a, b in zip(block, block[1:])):
                raise DesignStructureError(f"block {block} is not strictly increasing")
            if block and (block[0] < 0 or block[-1] >= self.v):
                raise DesignStructureError(f"block {block} has a point outside [0, {self.v})")
            if len(block) not in self.block_sizes:
                raise DesignStructureError(
                    f"block {block} has size {len(block)}, not in K={sorted(self.block_sizes)}")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def sizes_used(self) -> FrozenSet[int]:
        return frozenset(len(b) for b in self.blocks)

    @property
    def max_block_size(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    def is_triple_system(self) -> bool:
        return all(len(b) == 3 for b in self.blocks)


@dataclass(frozen=True)
class AdmissibilityReport:
    alpha: int
    beta: int
    global_ok: bool
    local_ok: bool

    @property
    def ok(self) -> bool:
        return self.global_ok and self.local_ok


@dataclass(frozen=True)
class PairCoverageReport:
    lam: int
    deviations: List[Tuple[Pair, int]] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.deviations


def make_design(v, lam, blocks: Iterable[Iterable[int]], block_sizes=None) -> Design:
    """
    Builds a Design from loose blocks, sorting each block.

    Args:
        v (int): Number of points
        lam (int): Index λ
        blocks: Iterable of point collections
        block_sizes: Declared K; defaults to the sizes actually used

    Returns:
        Design: The validated design
    """
    sorted_blocks = []
    for raw in blocks:
        block = tuple(sorted(raw))
        if len(set(block)) != len(block):
            raise DesignStructureError(f"duplicate point in block {tuple(raw)}")
        sorted_blocks.append(block)
    if block_sizes is None:
        block_sizes = {len(b) for b in sorted_blocks}
    return Design(v=v, lam=lam, block_sizes=frozenset(block_sizes), blocks=tuple(sorted_blocks))


def pair_counts(d: Design) -> Counter:
    counts = Counter()
    for block in d.blocks:
        counts.update(combinations(block, 2))
    return counts


def validate_pbd(d: Design) -> PairCoverageReport:
    """
    Checks that every pair of points lies in exactly λ blocks, counting repeats.

    Returns:
        PairCoverageReport: every pair whose multiplicity differs from λ, in lexicographic pair order
    """
    counts = pair_counts(d)
    deviations = [(pair, counts[pair]) for pair in combinations(range(d.v), 2)
                  if counts[pair] != d.lam]
    return PairCoverageReport(lam=d.lam, deviations=deviations)


def admissible(v, lam, sizes) -> AdmissibilityReport:
    """
    Evaluates the global condition λv(v-1) ≡ 0 (mod β(K)) and the local
    condition λ(v-1) ≡ 0 (mod α(K)).

    Args:
        v (int): Number of points, at least 2
        lam (int): Index, at least 1
        sizes: Nonempty collection K of block sizes

    Returns:
        AdmissibilityReport: α(K), β(K) and both congruence checks
    """
    sizes = sorted(set(sizes))
    if not sizes:
        raise DesignStructureError("block size set K is empty")
    if v < 2 or lam < 1:
        raise DesignStructureError(f"need v >= 2 and lambda >= 1, got v={v}, lambda={lam}")
    alpha = reduce(gcd, (k - 1 for k in sizes))
    beta = reduce(gcd, (k * (k - 1) for k in sizes))
    return AdmissibilityReport(
        alpha=alpha,
        beta=beta,
        global_ok=(lam * v * (v - 1)) % beta == 0,
        local_ok=(lam * (v - 1)) % alpha == 0,
    )


def complete_triple_design(v) -> Design:
    """All C(v,3) triples once each; a TS_{v-2}(v). For v=5 this is the unique TS₃(5)."""
    if v < 3:
        raise DesignStructureError(f"complete triple design needs v >= 3, got {v}")
    return Design(v=v, lam=v - 2, block_sizes=frozenset({3}),
                  blocks=tuple(combinations(range(v), 3)))


def scale_copies(d: Design, m) -> Design:
    """Repeats every block m times in place and multiplies λ by m."""
    if m < 1:
        raise DesignStructureError(f"copy count must be at least 1, got {m}")
    blocks = tuple(block for block in d.blocks for _ in range(m))
    return Design(v=d.v, lam=d.lam * m, block_sizes=d.block_sizes, blocks=blocks)


def relabel(d: Design, mapping) -> Design:
    """
    Applies a point permutation.

    Args:
        d (Design): Source design
        mapping: Sequence where mapping[old] is the new label of point old

    Returns:
        Design: Relabeled design, blocks kept in the original column order
    """
    if sorted(mapping) != list(range(d.v)):
        raise DesignStructureError("relabeling is not a permutation of the points")
    blocks = tuple(tuple(sorted(mapping[p] for p in block)) for block in d.blocks)
    return Design(v=d.v, lam=d.lam, block_sizes=d.block_sizes, blocks=blocks)


def block_multiset(d: Design) -> Counter:
    return Counter(d.blocks)
