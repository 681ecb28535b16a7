# File: analysis/census.py
# Description: Isomorph-free generation of TS_λ(v) and the rank census built on it.
#
# Designs are grown one point at a time: layer k holds the blocks whose largest point
# is k. After each layer the partial structure on points 0..k must be canonical
# (analysis/canonical.py), which keeps exactly one labeled representative per class.
# Functions:
# - enumerate_ts()
# - enumerate_labeled()
# - rank_spectrum()
# - prime_agreement()
# - write_census()
# - save_checkpoint() / load_checkpoint()

import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import List, Tuple

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import (CENSUS_PRIMES, CHECKPOINT_LAYER_OFFSET, DEFAULT_SEED, DESIGN_SUFFIX,
                    SUMMARY_FILENAME)
from analysis.canonical import automorphism_count, is_canonical_prefix
from analysis.trades import repeated_blocks
from design.errors import EnumerationError
from design.fileio import parse_design, serialize_design, write_design
from design.model import Design, admissible
from linalg.incidence import build_ns
from linalg.rank import RankReport, rank_certified, rank_mod_p
from utils.console import progress, status, success, warn

PARTIAL_MARKER = "# partial"
COMPLETE_MARKER = "# complete"


@dataclass(frozen=True)
class CensusRecord:
    canonical: Design
    automorphisms: int
    rank_report: RankReport


@dataclass(frozen=True)
class SpectrumReport:
    v: int
    lam: int
    class_count: int
    rank_multiset: Tuple[int, ...]
    distinct_ranks: Tuple[int, ...]
    nonsingular_count: int
    records: Tuple[CensusRecord, ...] = field(default=(), repr=False)


# A search state: the blocks chosen so far and the next layer to fill
State = Tuple[Tuple[Tuple[int, int, int], ...], int]


def _coverage(v, blocks):
    """Pair coverage counts; symmetric, cov[a][b] == cov[b][a]."""
    cov = [[0] * v for _ in range(v)]
    for a, b, c in blocks:
        for x, y in ((a, b), (a, c), (b, c)):
            cov[x][y] += 1
            cov[y][x] += 1
    return cov


def _layer_choices(v, lam, cov, k):
    """
    Yields every admissible layer k as a tuple of (a, b, multiplicity).

    Point a < k gets deg_a = Σ_b m_ab blocks {a,b,k}, which is the coverage of
    the pair {a,k} from this layer. Later blocks through a cover one remaining
    pair {a,b} (b <= k) and one pair {a,c} (c > k) each, or two pairs {a,c};
    the pairs {a,c} have room for λ(v-1-k), which bounds deg_a from below.
    """
    remaining = lam * (v - 1 - k)
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    capacity = [lam - cov[a][b] for a, b in pairs]
    last = k == v - 1

    min_deg = []
    for a in range(k):
        deficit = sum(lam - cov[a][b] for b in range(k) if b != a)
        min_deg.append(max(0, -(-(deficit + lam - remaining) // 2)))
    if any(m > lam for m in min_deg):
        return

    # Last index at which each point's degree can still change
    final_at = [-1] * k
    for i, (a, b) in enumerate(pairs):
        final_at[a] = i
        final_at[b] = i
    closing = [[] for _ in pairs]
    for a in range(k):
        if final_at[a] >= 0:
            closing[final_at[a]].append(a)

    deg = [0] * k
    chosen = []

    def extend(i):
        if i == len(pairs):
            if any(deg[a] < min_deg[a] for a in range(k)):
                return
            if lam * k - sum(deg) > remaining:
                return
            yield tuple(chosen)
            return
        a, b = pairs[i]
        top = min(capacity[i], lam - deg[a], lam - deg[b])
        low = capacity[i] if last else 0
        for m in range(top, low - 1, -1):
            deg[a] += m
            deg[b] += m
            if all(deg[p] >= min_deg[p] for p in closing[i]):
                if m:
                    chosen.append((a, b, m))
                yield from extend(i + 1)
                if m:
                    chosen.pop()
            deg[a] -= m
            deg[b] -= m

    if not pairs:
        if all(m == 0 for m in min_deg) and lam * k <= remaining:
            yield ()
        return
    yield from extend(0)


def _children(v, lam, state: State, canonical_only=True):
    blocks, k = state
    cov = _coverage(v, blocks)
    for layer in _layer_choices(v, lam, cov, k):
        grown = blocks + tuple((a, b, k) for a, b, m in layer for _ in range(m))
        if canonical_only and not is_canonical_prefix(grown, k + 1):
            continue
        yield grown, k + 1


def _descend(v, lam, state: State, stop_layer, canonical_only=True):
    """Depth-first search from state; yields states whose next layer is stop_layer."""
    if state[1] == stop_layer:
        yield state
        return
    for child in _children(v, lam, state, canonical_only):
        yield from _descend(v, lam, child, stop_layer, canonical_only)


def _complete_subtree(args) -> List[Tuple]:
    v, lam, state = args
    return [blocks for blocks, _ in _descend(v, lam, state, v)]


def _root(v) -> State:
    return (), min(2, v)


def _check_parameters(v, lam):
    if v < 3 or lam < 1:
        raise EnumerationError(f"triple systems need v >= 3 and lambda >= 1, got v={v}, lambda={lam}")
    report = admissible(v, lam, {3})
    if not report.ok:
        raise EnumerationError(f"no TS_{lam}({v}) exists: v={v}, lambda={lam} fails the "
                               f"{'global' if not report.global_ok else 'local'} condition")


def _as_design(v, lam, blocks) -> Design:
    return Design(v=v, lam=lam, block_sizes=frozenset({3}), blocks=tuple(sorted(blocks)))


def save_checkpoint(path, v, lam, layer, pending, complete):
    """Writes pending frontier states and finished designs; replaced atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    chunks = [f"# census v={v} lambda={lam} layer={layer}\n"]
    for blocks in pending:
        chunks.append(f"{PARTIAL_MARKER}\n" + serialize_design(_as_design(v, lam, blocks)))
    for blocks in complete:
        chunks.append(f"{COMPLETE_MARKER}\n" + serialize_design(_as_design(v, lam, blocks)))
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("".join(chunks), encoding="utf-8")
    os.replace(tmp, path)


def load_checkpoint(path, v, lam):
    """
    Reads a checkpoint written by save_checkpoint.

    Returns:
        tuple: (layer, pending block lists, complete block lists)
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("# census"):
        raise EnumerationError(f"{path} is not a census checkpoint")
    try:
        fields = dict(token.split("=", 1) for token in lines[0].split()[2:])
        file_v, file_lam, layer = int(fields["v"]), int(fields["lambda"]), int(fields["layer"])
    except (ValueError, KeyError) as e:
        raise EnumerationError(f"{path}: malformed checkpoint header {lines[0]!r}") from e
    if file_v != v or file_lam != lam:
        raise EnumerationError(f"checkpoint {path} is for v={file_v} lambda={file_lam}")

    records = []
    for line in lines[1:]:
        if line in (PARTIAL_MARKER, COMPLETE_MARKER):
            records.append((line, []))
        elif records:
            records[-1][1].append(line)
    pending, complete = [], []
    for marker, body in records:
        blocks = parse_design("\n".join(body)).blocks
        (pending if marker == PARTIAL_MARKER else complete).append(blocks)
    return layer, pending, complete


def _generate(v, lam, threads=1, checkpoint=None):
    split = max(min(2, v), v - CHECKPOINT_LAYER_OFFSET)
    if checkpoint and Path(checkpoint).exists():
        split, pending, complete = load_checkpoint(checkpoint, v, lam)
        status(f"Resuming from {checkpoint}: {len(pending)} frontier states left, "
               f"{len(complete)} classes found")
    else:
        pending = [blocks for blocks, _ in _descend(v, lam, _root(v), split)]
        complete = []
        status(f"Frontier at layer {split}: {len(pending)} canonical partial systems")
        if checkpoint:
            save_checkpoint(checkpoint, v, lam, split, pending, complete)

    jobs = [(v, lam, (blocks, split)) for blocks in pending]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = pool.map(_complete_subtree, jobs)
            for i, found in enumerate(progress(results, "subtrees", total=len(jobs))):
                complete.extend(found)
                if checkpoint:
                    save_checkpoint(checkpoint, v, lam, split, pending[i + 1:], complete)
    else:
        for i, job in enumerate(progress(jobs, "subtrees")):
            complete.extend(_complete_subtree(job))
            if checkpoint:
                save_checkpoint(checkpoint, v, lam, split, pending[i + 1:], complete)
    return complete


def enumerate_ts(v, lam, threads=1, checkpoint=None, primes=CENSUS_PRIMES, seed=DEFAULT_SEED):
    """
    One CensusRecord per isomorphism class of TS_λ(v), sorted by canonical serialization.

    Args:
        v (int): Number of points (intended for v <= 9)
        lam (int): Index λ
        threads (int): Worker processes for the frontier subtrees
        checkpoint: Optional checkpoint file; resumed when it exists
        primes: Primes reported in each rank report
        seed (int): Seed for the rank fast path

    Returns:
        list: CensusRecord per class
    """
    _check_parameters(v, lam)
    status(f"Enumerating TS_{lam}({v})...")
    designs = sorted((_as_design(v, lam, blocks) for blocks in _generate(v, lam, threads, checkpoint)),
                     key=serialize_design)
    records = []
    for d in progress(designs, "ranks"):
        report = rank_certified(build_ns(d, 2), primes, seed)
        records.append(CensusRecord(canonical=d, automorphisms=automorphism_count(d),
                                    rank_report=report))
    success(f"Found {len(records)} isomorphism classes of TS_{lam}({v})")
    return records


def enumerate_labeled(v, lam):
    """Every labeled TS_λ(v) on points 0..v-1, without isomorph rejection. Tiny v only."""
    _check_parameters(v, lam)
    for blocks, _ in _descend(v, lam, _root(v), v, canonical_only=False):
        yield _as_design(v, lam, blocks)


def spectrum_from_records(v, lam, records) -> SpectrumReport:
    ranks = tuple(sorted(r.rank_report.q_rank for r in records))
    return SpectrumReport(
        v=v,
        lam=lam,
        class_count=len(records),
        rank_multiset=ranks,
        distinct_ranks=tuple(sorted(set(ranks))),
        nonsingular_count=sum(1 for r in records if r.rank_report.nonsingular),
        records=tuple(records),
    )


def rank_spectrum(v, lam, threads=1, checkpoint=None, seed=DEFAULT_SEED) -> SpectrumReport:
    """Runs the census and collects the rational ranks of N₂ over all classes."""
    report = spectrum_from_records(v, lam, enumerate_ts(v, lam, threads, checkpoint, seed=seed))
    if report.nonsingular_count != report.rank_multiset.count(comb(v, 2)):
        warn("nonsingular count disagrees with the multiplicity of C(v,2)")
    return report


def prime_agreement(records, primes) -> list:
    """
    Compares each class's stored rational rank with its p-ranks. Stored p-ranks
    are reused; other primes are computed on the class's N_2 matrix.

    Returns:
        list: (class_id, p, p_rank, q_rank) for every disagreement, class ids 1-based
    """
    found = []
    for class_id, record in enumerate(records, start=1):
        matrix = build_ns(record.canonical, 2)
        q_rank = record.rank_report.q_rank
        for p in primes:
            p_rank = record.rank_report.p_ranks.get(p)
            if p_rank is None:
                p_rank = rank_mod_p(matrix, p)
            if p_rank != q_rank:
                found.append((class_id, p, p_rank, q_rank))
    return found


def write_census(records, out_dir):
    """
    One design file per class plus a summary TSV:
    class_id, q_rank, rank_mod2, rank_mod3, aut_order, repeated_blocks.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(len(records))))
    with open(out_dir / SUMMARY_FILENAME, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(["class_id", "q_rank", "rank_mod2", "rank_mod3", "aut_order", "repeated_blocks"])
        for class_id, record in enumerate(records, start=1):
            name = f"class_{class_id:0{width}d}"
            write_design(out_dir / f"{name}{DESIGN_SUFFIX}", record.canonical,
                         comment=f"{name} aut_order={record.automorphisms}")
            p_ranks = record.rank_report.p_ranks
            writer.writerow([name, record.rank_report.q_rank, p_ranks.get(2, ""), p_ranks.get(3, ""),
                             record.automorphisms, len(repeated_blocks(record.canonical))])
    return out_dir
