# File: analysis/canonical.py
# Description: Canonical labeling of designs by branch-and-bound over point relabelings.
#
# New labels are handed out in order 0, 1, 2, ...; the key contributed by label j is
# (invariant of the point receiving j, blocks whose largest label is j). Blocks in a
# level are compared by count (more is smaller) and then as sorted label tuples. A
# partial labeling fixes every level it has reached, so only the labelings tied for
# the least prefix survive from one level to the next.
# Functions:
# - point_invariants()
# - is_canonical_prefix()
# - canonical_labeling()
# - canonical_form()
# - automorphism_count()
# - are_isomorphic()

from collections import Counter
from itertools import combinations

from design.model import Design, relabel


def point_invariants(d: Design):
    """Per point: (degree, sorted multiplicities of the pairs through the point)."""
    degree = [0] * d.v
    pairs = Counter()
    for block in d.blocks:
        for p in block:
            degree[p] += 1
        pairs.update(combinations(block, 2))
    profile = [[] for _ in range(d.v)]
    for (p, q), count in pairs.items():
        profile[p].append(count)
        profile[q].append(count)
    return [(degree[p], tuple(sorted(profile[p] + [0] * (d.v - 1 - len(profile[p])))))
            for p in range(d.v)]


class _LabelSearch:
    def __init__(self, n, blocks, invariants=None):
        self.n = n
        self.invariants = invariants or [0] * n
        self.incident = [[] for _ in range(n)]
        for block in blocks:
            for p in block:
                self.incident[p].append(tuple(q for q in block if q != p))

    def level_key(self, point, labels):
        level = []
        for others in self.incident[point]:
            if all(q in labels for q in others):
                level.append(tuple(sorted(labels[q] for q in others)))
        level.sort()
        return (self.invariants[point], -len(level), tuple(level))

    def run(self, test_identity=False):
        """
        Returns the list of optimal full labelings (each a tuple of points in
        label order), or None when test_identity finds a labeling beating the
        identity.
        """
        survivors = [()]
        for j in range(self.n):
            # The identity order always survives in test mode, so its key bounds the level
            best = self.level_key(j, {i: i for i in range(j)}) if test_identity else None
            following = []
            for order in survivors:
                labels = {p: i for i, p in enumerate(order)}
                for p in range(self.n):
                    if p in labels:
                        continue
                    key = self.level_key(p, labels)
                    if best is None or key < best:
                        if test_identity:
                            return None
                        best = key
                        following = [order + (p,)]
                    elif key == best:
                        following.append(order + (p,))
            survivors = following
        return survivors


def is_canonical_prefix(blocks, n) -> bool:
    """
    True when the identity labeling of points 0..n-1 already gives the least
    key among all relabelings of those points. Used on partial structures
    during orderly generation, so no point invariants are involved.
    """
    return _LabelSearch(n, blocks).run(test_identity=True) is not None


def canonical_labeling(d: Design):
    """
    Finds an optimal relabeling.

    Returns:
        tuple: (mapping, aut_order) where mapping[old] = new label and aut_order
        is the number of optimal labelings, i.e. the automorphism group order
    """
    survivors = _LabelSearch(d.v, d.blocks, point_invariants(d)).run()
    order = survivors[0]
    mapping = [0] * d.v
    for new, old in enumerate(order):
        mapping[old] = new
    return mapping, len(survivors)


def canonical_form(d: Design) -> Design:
    """The canonical relabeling of d, blocks in lexicographic order."""
    mapping, _ = canonical_labeling(d)
    image = relabel(d, mapping)
    return Design(v=image.v, lam=image.lam, block_sizes=image.block_sizes,
                  blocks=tuple(sorted(image.blocks)))


def automorphism_count(d: Design) -> int:
    return canonical_labeling(d)[1]


def are_isomorphic(d1: Design, d2: Design) -> bool:
    if (d1.v, d1.lam, d1.num_blocks) != (d2.v, d2.lam, d2.num_blocks):
        return False
    if sorted(point_invariants(d1)) != sorted(point_invariants(d2)):
        return False
    if sorted(Counter(d1.blocks).values()) != sorted(Counter(d2.blocks).values()):
        return False
    return canonical_form(d1) == canonical_form(d2)
