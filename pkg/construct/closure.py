# File: construct/closure.py
# Description: PBD-closure composition (break every PBD block into an ingredient design)
# and the status table of orders with no known PBD(v,{5,7,9}).
# Functions:
# - compose()
# - compose_mixed()
# - achievable_ranks()
# - exception_status()

from typing import Dict, Iterable, List, Sequence

from design.errors import DesignStructureError
from design.model import Design, validate_pbd

# Odd orders with no known PBD(v,{5,7,9})
EXCEPTION_TABLE = frozenset(
    [11, 13, 15, 17, 19, 23, 27, 29, 31, 33, 39, 43, 51, 59, 71, 75, 83, 87, 95, 99,
     107, 111, 113, 115, 119, 139, 179]
)

COMPOSABLE = "composable"
POSSIBLE_EXCEPTION = "possible-exception"


def _check_frame(pbd: Design):
    if pbd.lam != 1:
        raise DesignStructureError(f"frame PBD must have index 1, got lambda={pbd.lam}")
    report = validate_pbd(pbd)
    if not report.is_valid:
        pair, count = report.deviations[0]
        raise DesignStructureError(
            f"frame is not a PBD: pair {pair} covered {count} times "
            f"({len(report.deviations)} deviating pairs)")


def _check_ingredients(ingredients: Iterable[Design]):
    ingredients = list(ingredients)
    lams = {d.lam for d in ingredients}
    sizes = {d.block_sizes for d in ingredients}
    if len(lams) > 1:
        raise DesignStructureError(f"ingredients disagree on lambda: {sorted(lams)}")
    if len(sizes) > 1:
        raise DesignStructureError(f"ingredients disagree on K: {[sorted(k) for k in sizes]}")
    for d in ingredients:
        report = validate_pbd(d)
        if not report.is_valid:
            raise DesignStructureError(
                f"ingredient on {d.v} points is not a PBD with lambda={d.lam}")


def _place(ingredient: Design, frame_block) -> List[tuple]:
    # Order-preserving bijection {0..u-1} -> sorted(frame_block)
    target = sorted(frame_block)
    return [tuple(target[p] for p in block) for block in ingredient.blocks]


def compose_mixed(pbd: Design, seed_for_block: Sequence[Design]) -> Design:
    """
    Multiset union of one ingredient per frame block, each relabeled onto its block.

    Args:
        pbd (Design): A PBD(v,L) with λ=1
        seed_for_block: Ingredient for each frame block, in frame block order

    Returns:
        Design: A PBD_λ(v,K) whose N₂ is block diagonal over the frame blocks
    """
    _check_frame(pbd)
    if len(seed_for_block) != pbd.num_blocks:
        raise DesignStructureError(
            f"{len(seed_for_block)} ingredients given for {pbd.num_blocks} frame blocks")
    for block, ingredient in zip(pbd.blocks, seed_for_block):
        if ingredient.v != len(block):
            raise DesignStructureError(
                f"ingredient on {ingredient.v} points cannot fill frame block {block}")
    _check_ingredients({id(d): d for d in seed_for_block}.values())

    blocks = []
    for frame_block, ingredient in zip(pbd.blocks, seed_for_block):
        blocks.extend(_place(ingredient, frame_block))
    first = seed_for_block[0] if seed_for_block else None
    lam = first.lam if first else 1
    sizes = first.block_sizes if first else frozenset()
    return Design(v=pbd.v, lam=lam, block_sizes=sizes, blocks=tuple(blocks))


def compose(pbd: Design, seeds: Dict[int, Design]) -> Design:
    """
    PBD closure: replace each frame block U by seeds[|U|] placed on U.

    Args:
        pbd (Design): A PBD(v,L) with λ=1
        seeds (dict): Block size -> PBD_λ(size,K); all seeds share λ and K

    Returns:
        Design: The composed PBD_λ(v,K)
    """
    missing = sorted(pbd.sizes_used - set(seeds))
    if missing:
        raise DesignStructureError(f"no seed given for frame block sizes {missing}")
    for u, d in seeds.items():
        if d.v != u:
            raise DesignStructureError(f"seed registered for size {u} has {d.v} points")
    _check_ingredients(seeds.values())
    return compose_mixed(pbd, [seeds[len(block)] for block in pbd.blocks])


def achievable_ranks(pbd: Design, ranks_by_size: Dict[int, Iterable[int]]) -> List[int]:
    """
    All ranks Σ_U r_U reachable by composing over the frame, choosing for each
    block U an ingredient whose N₂ rank r_U is listed under |U|.
    """
    missing = sorted(pbd.sizes_used - set(ranks_by_size))
    if missing:
        raise DesignStructureError(f"no ingredient ranks given for sizes {missing}")
    options = {u: sorted(set(r)) for u, r in ranks_by_size.items()}
    reachable = {0}
    for block in pbd.blocks:
        reachable = {total + r for total in reachable for r in options[len(block)]}
    return sorted(reachable)


def exception_status(v) -> str:
    """
    "possible-exception" when v is in the exception table, "composable" otherwise.
    Composable orders rely on the literature's PBD(v,{5,7,9}); none is built here.
    """
    if v < 5 or v % 2 == 0:
        raise DesignStructureError(f"status is defined for odd v >= 5, got {v}")
    return POSSIBLE_EXCEPTION if v in EXCEPTION_TABLE else COMPOSABLE
