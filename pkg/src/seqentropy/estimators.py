"""Finite-size profiles of local and information entropy.

For every word length ``n`` a profile row holds ``(1/n) H(p(x, n, N))`` (local)
and ``(1/n) log2 L(x, n, N)`` (information), where ``p`` is the empirical
distribution of length-``n`` windows and ``L`` the number of distinct ones.
Limits in ``n`` are approximated by the spread over the last third of the
statistically reliable rows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, asdict
from typing import Sequence

import numpy as np

from .entropy_core import MassDistribution, shannon_entropy
from .words import (
    _as_sequence,
    _census,
    count_words,
    iter_window_codes,
)

OVERSAMPLING = 100
NON_PLATEAU_GAP = 0.1
CSV_COLUMNS = ("n", "windows", "distinct", "local_value", "info_value", "reliable")


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class ProfileRow:
    n: int
    windows: int
    distinct: int
    local_value: float
    info_value: float


@dataclass(frozen=True)
class EntropyProfile:
    N: int
    alphabet_size: int
    rows: tuple[ProfileRow, ...]
    reliability_cutoff: int
    miller_madow: bool = False

    @property
    def n_max(self) -> int:
        return self.rows[-1].n

    def row(self, n: int) -> ProfileRow:
        r = self.rows[n - 1]
        assert r.n == n
        return r

    def reliable_rows(self) -> tuple[ProfileRow, ...]:
        return self.rows[: self.reliability_cutoff]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.n, r.windows, r.distinct, repr(r.local_value),
                        repr(r.info_value), int(r.n <= self.reliability_cutoff)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "alphabet_size": self.alphabet_size,
            "reliability_cutoff": self.reliability_cutoff,
            "miller_madow": self.miller_madow,
            "rows": [dict(asdict(r), reliable=int(r.n <= self.reliability_cutoff))
                     for r in self.rows],
        }


@dataclass(frozen=True)
class EntropyEstimate:
    lower: float
    upper: float
    n_window: tuple[int, int]
    method: str = "plateau"

    @property
    def plateau(self) -> bool:
        """False when the spread is too wide to call the limit."""
        return self.upper - self.lower <= NON_PLATEAU_GAP

    @property
    def mid(self) -> float:
        return 0.5 * (self.lower + self.upper)


def reliability_cutoff(N: int, r: int, n_max: int | None = None) -> int:
    """Largest ``n`` with ``r**n <= (N - n + 1) / 100`` (0 if none)."""
    n = 0
    while r ** (n + 1) * OVERSAMPLING <= N - n:
        n += 1
        if r == 1 or (n_max is not None and n >= n_max):
            break
    return n


def _row(n: int, keys_counts: tuple[np.ndarray, np.ndarray], W: int, r: int,
         miller_madow: bool) -> ProfileRow:
    _, counts = keys_counts
    distinct = int(counts.size)
    H = shannon_entropy(MassDistribution(counts / W, r**n))
    if miller_madow:
        H += (distinct - 1) / (2.0 * W * math.log(2))
    return ProfileRow(n, W, distinct, H / n, math.log2(distinct) / n)


def entropy_profile(x, n_max: int, N: int | None = None,
                    miller_madow: bool = False) -> EntropyProfile:
    """Rows for ``n = 1 .. n_max`` over the first ``N`` symbols of ``x``.

    ``miller_madow`` adds the ``(K - 1) / (2 W ln 2)`` small-sample correction
    to the plug-in entropy; it is off by default.
    """
    x = _as_sequence(x)
    N = x.N if N is None else int(N)
    if N > x.N:
        raise ValueError(f"N={N} exceeds sequence length {x.N}")
    if not 1 <= n_max < N:
        raise ValueError(f"need 1 <= n_max < N, got n_max={n_max}, N={N}")
    r = x.alphabet_size
    s = x.symbols[:N]
    rows = []
    for n, codes in iter_window_codes(s, r, n_max):
        rows.append(_row(n, _census(codes, r**n), codes.size, r, miller_madow))
    for n in range(len(rows) + 1, n_max + 1):
        t = count_words(x, n, N)
        rows.append(_row(n, (t.keys, t.counts), t.window_total, r, miller_madow))
    cutoff = reliability_cutoff(N, r, n_max) if r > 1 else n_max
    return EntropyProfile(N, r, tuple(rows), cutoff, miller_madow)


def _tail(profile: EntropyProfile) -> tuple[ProfileRow, ...]:
    c = profile.reliability_cutoff
    if c < 3:
        raise InsufficientDataError(
            f"reliability cutoff {c} < 3 (N={profile.N}, r={profile.alphabet_size})"
        )
    k = math.ceil(c / 3)
    return profile.rows[c - k : c]


def _estimate(profile: EntropyProfile, attr: str, method: str) -> EntropyEstimate:
    tail = _tail(profile)
    vals = [getattr(r, attr) for r in tail]
    cap = math.log2(profile.alphabet_size)
    if method == "plateau":
        lo, hi = min(vals), max(vals)
    elif method == "tail-average":
        lo = hi = math.fsum(vals) / len(vals)
    else:
        raise ValueError(f"unknown method {method!r}")
    lo, hi = min(max(lo, 0.0), cap), min(max(hi, 0.0), cap)
    return EntropyEstimate(lo, hi, (tail[0].n, tail[-1].n), method)


def estimate_h_loc(profile: EntropyProfile, method: str = "plateau") -> EntropyEstimate:
    return _estimate(profile, "local_value", method)


def estimate_h_info(profile: EntropyProfile, method: str = "plateau") -> EntropyEstimate:
    return _estimate(profile, "info_value", method)


def series_scheme_profile(words: Sequence, n_max: int) -> list[tuple[int, EntropyProfile]]:
    """Profile each word of a growing family on its own.

    Words are not prefixes of one another; each is analysed in isolation
    with ``n_max`` capped at its length minus one.
    """
    seqs = [_as_sequence(w, 2) for w in words]
    if len(seqs) < 2:
        raise ValueError("a series scheme needs at least two words")
    lengths = [s.N for s in seqs]
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ValueError(f"word lengths must strictly increase, got {lengths}")
    return [(s.N, entropy_profile(s, min(n_max, s.N - 1))) for s in seqs]
