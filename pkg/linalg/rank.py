# File: linalg/rank.py
# Description: Certified rank over Q (fraction-free elimination) and over prime fields.
# Functions:
# - rank_exact_integer()
# - rank_mod_p()
# - rank_certified()
# - verify_kernel_vector()
# - rational_kernel_basis()
# - format_rank_report()

import math
import random
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np
import sympy

import sys
import os
# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import DEFAULT_SEED, FAST_PRIME_BITS, NATIVE_MODULUS_LIMIT
from design.errors import MatrixError
from linalg.gf2 import gf2_rank
from linalg.incidence import IncidenceMatrix

METHOD_MODULAR = "modular-full-rank"
METHOD_BAREISS = "fraction-free-elimination"


@dataclass(frozen=True)
class RankReport:
    """
    Rank of one integer matrix. q_rank is always certified: either the
    random-prime rank already equals min(rows, cols), or exact elimination ran.
    """
    rows: int
    cols: int
    q_rank: int
    p_ranks: Dict[int, int] = field(default_factory=dict)
    method: str = METHOD_BAREISS
    prng_seed: int = DEFAULT_SEED
    fast_prime: Optional[int] = None

    @property
    def nonsingular(self) -> bool:
        return self.rows == self.cols and self.q_rank == self.rows


def _as_exact(matrix) -> np.ndarray:
    if isinstance(matrix, IncidenceMatrix):
        matrix = matrix.to_array()
    exact = np.array(matrix, dtype=object)
    if exact.ndim != 2:
        raise MatrixError(f"expected a 2-d matrix, got shape {exact.shape}")
    return exact


def _check_prime(p):
    if not isinstance(p, (int, np.integer)) or not sympy.isprime(int(p)):
        raise MatrixError(f"{p!r} is not a prime")
    return int(p)


def rank_exact_integer(matrix) -> int:
    """
    Rank over Q by fraction-free (Bareiss) elimination on exact Python integers.

    Every intermediate entry is a minor of the input, so each division by the
    previous pivot is exact. Among rows that can pivot in the current column,
    the one with the fewest nonzeros is taken (ties by index).

    Args:
        matrix: IncidenceMatrix, numpy array or nested lists of integers

    Returns:
        int: The rank
    """
    a = _as_exact(matrix)
    rows, cols = a.shape
    rank = 0
    previous = 1
    for c in range(cols):
        if rank == rows:
            break
        candidates = [i for i in range(rank, rows) if a[i, c] != 0]
        if not candidates:
            continue
        pivot = min(candidates, key=lambda i: (int((a[i, c:] != 0).sum()), i))
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        head = a[rank, c]
        if rank + 1 < rows and c + 1 < cols:
            a[rank + 1:, c + 1:] = (head * a[rank + 1:, c + 1:]
                                    - np.outer(a[rank + 1:, c], a[rank, c + 1:])) // previous
        a[rank + 1:, c] = 0
        previous = head
        rank += 1
    return rank


def rank_mod_p(matrix, p) -> int:
    """
    Rank over F_p by Gaussian elimination.

    p=2 uses packed bitset rows; primes below NATIVE_MODULUS_LIMIT run in
    int64; larger primes fall back to exact object arrays.
    """
    p = _check_prime(p)
    a = _as_exact(matrix) % p
    if p == 2:
        return gf2_rank(a)
    if p < NATIVE_MODULUS_LIMIT:
        a = a.astype(np.int64)
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.flatnonzero(a[rank:, c])
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inverse = pow(int(a[rank, c]), -1, p)
        a[rank, c:] = (a[rank, c:] * inverse) % p
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            a[below, c:] = (a[below, c:] - np.outer(a[below, c], a[rank, c:])) % p
        rank += 1
    return rank


def fast_prime(seed=DEFAULT_SEED, bits=FAST_PRIME_BITS) -> int:
    """Deterministic pseudo-random prime in [2**(bits-1), 2**bits) drawn from the seed."""
    rng = random.Random(seed)
    start = rng.getrandbits(bits - 1) | (1 << (bits - 1))
    prime = sympy.nextprime(start)
    if prime >= 1 << bits:
        prime = sympy.prevprime(start)
    return int(prime)


def rank_certified(matrix, primes: Sequence[int] = (), seed=DEFAULT_SEED) -> RankReport:
    """
    Certified rank over Q plus ranks over the requested primes.

    The rank modulo one large random prime is a lower bound for the rational
    rank; when it already equals min(rows, cols) it certifies the rank.
    Otherwise exact fraction-free elimination decides.

    Args:
        matrix: Integer matrix (IncidenceMatrix, array or lists)
        primes: Primes for which p-ranks are reported
        seed (int): Seed for the fast-path prime

    Returns:
        RankReport: q_rank, p_ranks and the certification path taken
    """
    primes = [_check_prime(p) for p in primes]
    exact = _as_exact(matrix)
    rows, cols = exact.shape
    prime = fast_prime(seed)
    lower = rank_mod_p(exact, prime)
    if lower == min(rows, cols):
        q_rank, method = lower, METHOD_MODULAR
    else:
        q_rank, method = rank_exact_integer(exact), METHOD_BAREISS
    p_ranks = {p: rank_mod_p(exact, p) for p in primes}
    return RankReport(rows=rows, cols=cols, q_rank=q_rank, p_ranks=p_ranks,
                      method=method, prng_seed=seed, fast_prime=prime)


def verify_kernel_vector(vector, matrix, side="right", field="rational") -> bool:
    """
    Checks vecᵀ·M = 0 (side="left") or M·vec = 0 (side="right").

    Args:
        vector: Integer vector
        matrix: Integer matrix
        side (str): "left" or "right"
        field: "rational" (or "q") for exact arithmetic, or a prime p

    Returns:
        bool: True when the product vanishes over the field
    """
    a = _as_exact(matrix)
    vec = np.array(vector, dtype=object).ravel()
    if side == "left":
        if vec.size != a.shape[0]:
            raise MatrixError(f"left vector has length {vec.size}, matrix has {a.shape[0]} rows")
        product = vec.dot(a)
    elif side == "right":
        if vec.size != a.shape[1]:
            raise MatrixError(f"right vector has length {vec.size}, matrix has {a.shape[1]} columns")
        product = a.dot(vec)
    else:
        raise MatrixError(f"side must be 'left' or 'right', got {side!r}")

    if field in ("rational", "q", "Q"):
        return not np.any(product != 0)
    p = _check_prime(field)
    return not np.any(product % p != 0)


def rational_kernel_basis(matrix) -> list:
    """Basis of the right kernel over Q, each vector scaled to coprime integers."""
    exact = _as_exact(matrix)
    basis = sympy.Matrix(exact.tolist()).nullspace()
    vectors = []
    for column in basis:
        scale = math.lcm(*(int(sympy.fraction(x)[1]) for x in column))
        ints = [int(x * scale) for x in column]
        common = math.gcd(*ints) or 1
        vectors.append([x // common for x in ints])
    return vectors


def format_rank_report(report: RankReport) -> str:
    """Line-oriented text record of a RankReport."""
    lines = [f"q_rank={report.q_rank} nonsingular={str(report.nonsingular).lower()}"]
    lines.extend(f"p_rank[{p}]={r}" for p, r in sorted(report.p_ranks.items()))
    lines.append(f"method={report.method}")
    lines.append(f"prng_seed={report.prng_seed}")
    return "\n".join(lines) + "\n"
