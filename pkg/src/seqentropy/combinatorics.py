"""Exact counts of binary words avoiding a forbidden factor, and prime k-tuple
censuses.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .generators import prime_mask, _small_primes


def _as_word(f) -> tuple[int, ...]:
    if isinstance(f, str):
        f = [int(c) for c in f]
    w = tuple(int(c) for c in f)
    if not w:
        raise ValueError("forbidden word must be non-empty")
    if any(c not in (0, 1) for c in w):
        raise ValueError("forbidden word must be binary")
    return w


def _failure_function(w: tuple[int, ...]) -> list[int]:
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def prefix_automaton(f) -> list[list[int | None]]:
    """KMP automaton over ``{0, 1}`` restricted to states ``0..|f|-1``.

    ``delta[state][bit]`` is the length of the longest prefix of ``f`` that is
    a suffix of the text read so far, or ``None`` when ``f`` is completed.
    """
    w = _as_word(f)
    fail = _failure_function(w)
    m = len(w)
    delta: list[list[int | None]] = []
    for state in range(m):
        row: list[int | None] = []
        for bit in (0, 1):
            k = state
            while k and w[k] != bit:
                k = fail[k - 1]
            if w[k] == bit:
                k += 1
            row.append(None if k == m else k)
        delta.append(row)
    return delta


@dataclass
class AvoidanceCounter:
    """Counts Q(n, f) of binary words of length n with no factor ``f``.

    Python integers keep every count exact.
    """

    forbidden: tuple[int, ...]
    delta: list[list[int | None]] = field(init=False, repr=False)
    _counts: list[int] = field(init=False, repr=False)
    _state: list[int] = field(init=False, repr=False)

    def __post_init__(self):
        self.forbidden = _as_word(self.forbidden)
        self.delta = prefix_automaton(self.forbidden)
        self._state = [1] + [0] * (len(self.forbidden) - 1)
        self._counts = [1]

    @property
    def n_states(self) -> int:
        return len(self.forbidden)

    def transfer_matrix(self) -> np.ndarray:
        T = np.zeros((self.n_states, self.n_states), dtype=np.int64)
        for s, row in enumerate(self.delta):
            for t in row:
                if t is not None:
                    T[s, t] += 1
        return T

    def _step(self):
        nxt = [0] * self.n_states
        for s, c in enumerate(self._state):
            if c:
                for t in self.delta[s]:
                    if t is not None:
                        nxt[t] += c
        self._state = nxt
        self._counts.append(sum(nxt))

    def count(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be non-negative")
        while len(self._counts) <= n:
            self._step()
        return self._counts[n]

    def counts(self, n_max: int) -> list[int]:
        self.count(n_max)
        return self._counts[: n_max + 1]


def avoid_count(f, n: int) -> int:
    return AvoidanceCounter(_as_word(f)).count(n)


def growth_rate(f, rtol: float = 1e-9, max_n: int = 100_000) -> float:
    """Dominant growth rate of Q(n, f), by iterating count ratios.

    Returns 0 when only finitely many words avoid ``f``.
    """
    counter = AvoidanceCounter(_as_word(f))
    prev = None
    stable = 0
    for n in range(1, max_n):
        a, b = counter.count(n), counter.count(n + 1)
        if a == 0:
            return 0.0
        ratio = b / a
        if prev is not None and abs(ratio - prev) <= rtol * abs(ratio):
            stable += 1
            # ratios can oscillate when the matrix is periodic; demand a run
            if stable >= 5:
                return ratio
        else:
            stable = 0
        prev = ratio
    raise RuntimeError(f"ratio iteration for {f!r} did not settle within n={max_n}")


# -- prime tuples -----------------------------------------------------------

@dataclass
class TupleCount:
    offsets: tuple[int, ...]
    N: int
    count: int
    admissible: bool
    covered_modulus: int | None
    empirical_constant: float


def admissibility(offsets: Sequence[int]) -> int | None:
    """Smallest prime whose residues are all hit by ``{0} + offsets``, or None."""
    full = sorted({0, *offsets})
    k = len(full)
    for p in _small_primes(k).tolist():
        if len({a % p for a in full}) == p:
            return p
    return None


def tuple_count(offsets: Sequence[int], N: int) -> TupleCount:
    """Count ``m <= N`` with ``m`` and every ``m + a`` prime.

    ``empirical_constant`` is ``count * ln(N)**(k + 1) / N`` with ``k`` the
    number of offsets, i.e. the ratio against ``N / ln^j N`` for a tuple of
    ``j = k + 1`` primes. Inadmissible offsets raise a warning but are still
    counted.
    """
    a = tuple(int(v) for v in offsets)
    if len(set(a)) != len(a) or any(v <= 0 or v % 2 for v in a):
        raise ValueError("offsets must be distinct positive even integers")
    if a and N < max(a):
        raise ValueError(f"N={N} smaller than the largest offset {max(a)}")
    if N < 2:
        raise ValueError("N must be at least 2")
    covered = admissibility(a)
    if covered is not None:
        warnings.warn(f"offsets {a} cover every residue class mod {covered}", stacklevel=2)
    top = N + (max(a) if a else 0)
    mask = prime_mask(top)
    hit = mask[1 : N + 1].copy()
    for v in a:
        hit &= mask[1 + v : N + 1 + v]
    count = int(np.count_nonzero(hit))
    const = count * math.log(N) ** (len(a) + 1) / N
    return TupleCount(a, N, count, covered is None, covered, const)
