"""Sequence constructors: primes, quadratic residues, Champernowne, Bernoulli,
Cramér, periodic and topological Markov sequences.

Positions are 1-based in the docstrings (position ``k`` is ``symbols[k - 1]``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .words import SymbolSequence

SEGMENT = 1 << 21
RNG_ALGORITHM = "numpy.random.Philox-4x64-10"


# -- primes -----------------------------------------------------------------

def _small_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(limit + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mark[p]:
            mark[p * p :: p] = False
    return np.flatnonzero(mark).astype(np.int64)


def sieve_segments(N: int, segment: int = SEGMENT) -> Iterator[tuple[int, np.ndarray]]:
    """Segmented sieve of Eratosthenes over ``[0, N]``.

    Yields ``(lo, is_prime)`` where ``is_prime[i]`` refers to ``lo + i``.
    Memory is O(sqrt(N) + segment).
    """
    base = _small_primes(math.isqrt(N))
    for lo in range(0, N + 1, segment):
        hi = min(lo + segment, N + 1)
        mark = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            mark[: min(2, hi)] = False
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            mark[start - lo :: p] = False
        yield lo, mark


def prime_bits(N: int) -> np.ndarray:
    """Bit-packed primality table for ``0..N`` (``np.packbits`` layout).

    Segments are a multiple of 8 long, so packing them one by one and
    concatenating gives the same bytes as packing the whole table.
    """
    return np.concatenate([np.packbits(mark) for _, mark in sieve_segments(N)])


def prime_mask(N: int) -> np.ndarray:
    """Boolean table ``mask[k]`` = k is prime, for ``0 <= k <= N``."""
    return np.unpackbits(prime_bits(N), count=N + 1).astype(bool)


def prime_count(N: int) -> int:
    """pi(N), counted segment by segment."""
    if N < 2:
        return 0
    return sum(int(np.count_nonzero(mark)) for _, mark in sieve_segments(N))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_indicator(N: int, include_one: bool = True) -> SymbolSequence:
    """Binary sequence with 1 at every prime position ``k <= N``.

    By default position 1 is marked too, following the prime list that
    starts ``1, 2, 3, 5, 7, ...``; pass ``include_one=False`` for the standard
    convention.
    """
    if N < 2:
        raise ValueError("prime_indicator needs N >= 2")
    bits = prime_mask(N)[1:].astype(np.uint8)
    if include_one:
        bits[0] = 1
    return SymbolSequence(bits, 2)


# -- quadratic residues -----------------------------------------------------

def quadratic_residue_word(q: int) -> SymbolSequence:
    """Word ``b_1 .. b_{q-1}`` with ``b_k = 1`` iff k is a square mod the odd prime q."""
    q = int(q)
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise ValueError(f"q={q} is not an odd prime")
    ell = np.arange(1, (q - 1) // 2 + 1, dtype=np.int64)
    word = np.zeros(q, dtype=np.uint8)
    word[(ell * ell) % q] = 1
    return SymbolSequence(word[1:], 2)


def legendre_symbol(a: int, q: int) -> int:
    """Euler's criterion: 1, -1 or 0."""
    t = pow(a % q, (q - 1) // 2, q)
    return -1 if t == q - 1 else t


# -- Champernowne -----------------------------------------------------------

def champernowne_binary(N: int) -> SymbolSequence:
    """First ``N`` bits of ``1 10 11 100 101 110 111 1000 ...``."""
    if N < 1:
        raise ValueError("N must be positive")
    blocks = []
    have = 0
    length = 1
    while have < N:
        lo, hi = 1 << (length - 1), 1 << length
        need_numbers = min(hi - lo, -(-(N - have) // length))
        nums = np.arange(lo, lo + need_numbers, dtype=np.int64)
        shifts = np.arange(length - 1, -1, -1, dtype=np.int64)
        bits = ((nums[:, None] >> shifts) & 1).astype(np.uint8).ravel()
        blocks.append(bits)
        have += bits.size
        length += 1
    return SymbolSequence(np.concatenate(blocks)[:N], 2)


# -- random sources and Bernoulli processes ---------------------------------

@dataclass
class RandomSource:
    """Seeded, platform-independent bit source (counter-based Philox).

    Not shareable across threads; give each parallel job its own seed.
    """

    seed: int
    algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.generator = np.random.Generator(np.random.Philox(int(self.seed)))

    def uniform(self, size: int) -> np.ndarray:
        return self.generator.random(size)


@dataclass(frozen=True)
class BernoulliSpec:
    """``q`` (a constant) for Ber(q), or ``prob`` mapping positions to q_k.

    ``prob`` receives a 1-based int64 position array and returns
    probabilities; values are clamped to ``[0, 1]``.
    """

    q: float | None = None
    prob: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    def __post_init__(self):
        if (self.q is None) == (self.prob is None):
            raise ValueError("give exactly one of q or prob")
        if self.q is not None and not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q={self.q} outside [0, 1]")

    @property
    def homogeneous(self) -> bool:
        return self.q is not None

    def probabilities(self, k: np.ndarray) -> np.ndarray:
        k = np.asarray(k, dtype=np.int64)
        if self.homogeneous:
            return np.full(k.shape, float(self.q))
        with np.errstate(divide="ignore", invalid="ignore"):
            p = np.asarray(self.prob(k), dtype=float)
        if np.isnan(p).any():
            raise ValueError(f"probability function {self.name or self.prob!r} returned NaN")
        return np.clip(p, 0.0, 1.0)


def _cramer_prob(k: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=np.int64)
    out = np.zeros(k.shape, dtype=float)
    big = k >= 2
    out[big] = np.minimum(1.0, 1.0 / np.log(k[big].astype(float)))
    return out


def cramer_spec() -> BernoulliSpec:
    """q_k = min(1, 1/ln k) for k >= 2 and q_1 = 0."""
    return BernoulliSpec(prob=_cramer_prob, name="cramer")


def bernoulli_realization(spec: BernoulliSpec, N: int, rng: RandomSource,
                          block: int = 1 << 22) -> SymbolSequence:
    if N < 1:
        raise ValueError("N must be positive")
    out = np.empty(N, dtype=np.uint8)
    for lo in range(0, N, block):
        hi = min(lo + block, N)
        k = np.arange(lo + 1, hi + 1, dtype=np.int64)
        out[lo:hi] = rng.uniform(hi - lo) < spec.probabilities(k)
    return SymbolSequence(out, 2)


def binary_entropy(q) -> np.ndarray:
    """``-q log2 q - (1 - q) log2 (1 - q)`` elementwise."""
    q = np.asarray(q, dtype=float)
    out = np.zeros_like(q)
    m = (q > 0) & (q < 1)
    qm = q[m]
    out[m] = -qm * np.log2(qm) - (1 - qm) * np.log2(1 - qm)
    return out


# -- periodic and Markov ----------------------------------------------------

def periodic_sequence(pattern: Sequence[int] | str, N: int, alphabet_size: int | None = None) -> SymbolSequence:
    if isinstance(pattern, str):
        pattern = [int(c) for c in pattern]
    pat = np.asarray(pattern, dtype=np.int64)
    if pat.size == 0:
        raise ValueError("empty pattern")
    if N < 1:
        raise ValueError("N must be positive")
    r = alphabet_size or max(2, int(pat.max()) + 1)
    reps = -(-N // pat.size)
    return SymbolSequence(np.tile(pat, reps)[:N], r)


def _reachable(T: np.ndarray, start: int) -> set[int]:
    seen, todo = {start}, [start]
    while todo:
        s = todo.pop()
        for t in np.flatnonzero(T[s]):
            t = int(t)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def markov_sequence(transition, start: int, N: int, rng: RandomSource) -> SymbolSequence:
    """Walk on a topological Markov chain, choosing successors uniformly.

    ``transition[i][j] = 1`` allows symbol ``j`` right after ``i``.
    """
    T = np.asarray(transition, dtype=np.int64)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("transition matrix must be square")
    if not np.isin(T, (0, 1)).all():
        raise ValueError("transition matrix must be binary")
    r = T.shape[0]
    if not 0 <= start < r:
        raise ValueError(f"start symbol {start} outside alphabet of size {r}")
    dead = [s for s in _reachable(T, start) if not T[s].any()]
    if dead:
        raise ValueError(f"dead-end states reachable from {start}: {sorted(dead)}")
    succ = [np.flatnonzero(row) for row in T]
    out = np.empty(N, dtype=np.int64)
    u = rng.uniform(N)
    s = start
    out[0] = s
    for i in range(1, N):
        options = succ[s]
        s = int(options[int(u[i] * options.size)])
        out[i] = s
    return SymbolSequence(out, max(r, 2))
