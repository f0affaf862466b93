"""Exact sliding-window word census of finite symbol sequences.

Words of length ``n`` are encoded as base-``r`` integers (first symbol most
significant) whenever ``r**n`` fits a signed 64-bit integer; otherwise they are
kept as rows of symbols. Occurrences overlap: every start ``i`` with
``i + n <= N`` contributes one window.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .entropy_core import MassDistribution

INT_KEY_LIMIT = 2**63
# bincount is used below this many possible words, sorting above it
DENSE_LIMIT = 2**22


@dataclass(frozen=True)
class SymbolSequence:
    """Finite sequence over the alphabet ``{0, ..., alphabet_size - 1}``."""

    symbols: np.ndarray
    alphabet_size: int = 2

    def __post_init__(self):
        r = int(self.alphabet_size)
        if r < 1:
            raise ValueError("alphabet_size must be positive")
        s = np.asarray(self.symbols)
        if s.ndim != 1 or s.size < 1:
            raise ValueError("a sequence needs at least one symbol")
        if s.dtype.kind not in "iub":
            raise TypeError(f"symbols must be integers, got {s.dtype}")
        if s.min() < 0 or s.max() >= r:
            raise ValueError(f"symbols must lie in [0, {r})")
        dtype = np.uint8 if r <= 256 else np.int64
        s = s.astype(dtype, copy=False)
        s.flags.writeable = False
        object.__setattr__(self, "symbols", s)
        object.__setattr__(self, "alphabet_size", r)

    @classmethod
    def from_string(cls, text: str, alphabet_size: int = 2) -> SymbolSequence:
        return cls(np.frombuffer(text.encode("ascii"), np.uint8) - ord("0"), alphabet_size)

    def __len__(self):
        return self.symbols.size

    @property
    def N(self) -> int:
        return self.symbols.size

    def prefix(self, N: int) -> SymbolSequence:
        if not 1 <= N <= self.N:
            raise ValueError(f"prefix length {N} outside [1, {self.N}]")
        return SymbolSequence(self.symbols[:N], self.alphabet_size)

    def relabel(self, permutation: Sequence[int]) -> SymbolSequence:
        perm = np.asarray(permutation)
        if sorted(perm.tolist()) != list(range(self.alphabet_size)):
            raise ValueError("relabel needs a permutation of the alphabet")
        return SymbolSequence(perm[self.symbols], self.alphabet_size)

    def to_string(self) -> str:
        if self.alphabet_size > 10:
            return " ".join(map(str, self.symbols.tolist()))
        return (self.symbols + ord("0")).astype(np.uint8).tobytes().decode("ascii")


@dataclass(frozen=True)
class WordCountTable:
    """Occurrence counts of every length-``n`` word in the first ``N`` symbols.

    ``keys`` is a sorted 1-D int64 array of base-``r`` codes, or a 2-D array of
    symbol rows when the codes would overflow. ``counts`` is aligned with it
    and holds only positive entries.
    """

    n: int
    N: int
    alphabet_size: int
    keys: np.ndarray
    counts: np.ndarray

    @property
    def window_total(self) -> int:
        return self.N - self.n + 1

    @property
    def int_encoded(self) -> bool:
        return self.keys.ndim == 1

    @property
    def n_possible(self) -> int:
        return self.alphabet_size**self.n

    def words(self) -> list[tuple[int, ...]]:
        if not self.int_encoded:
            return [tuple(row) for row in self.keys.tolist()]
        return [decode_word(int(k), self.n, self.alphabet_size) for k in self.keys]

    def to_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.words(), self.counts.tolist()))

    def count_of(self, word: Sequence[int]) -> int:
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != table word length {self.n}")
        if self.int_encoded:
            key = encode_word(word, self.alphabet_size)
            i = np.searchsorted(self.keys, key)
            if i < self.keys.size and self.keys[i] == key:
                return int(self.counts[i])
            return 0
        hit = np.all(self.keys == np.asarray(word), axis=1)
        return int(self.counts[hit].sum())


def encode_word(word: Sequence[int], r: int = 2) -> int:
    code = 0
    for s in word:
        code = code * r + int(s)
    return code


def decode_word(code: int, n: int, r: int = 2) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, s = divmod(code, r)
        out.append(s)
    return tuple(reversed(out))


def _as_sequence(x, alphabet_size: int | None = None) -> SymbolSequence:
    if isinstance(x, SymbolSequence):
        return x
    arr = np.asarray(x)
    r = alphabet_size if alphabet_size is not None else max(2, int(arr.max()) + 1)
    return SymbolSequence(arr, r)


def window_codes(symbols: np.ndarray, n: int, r: int) -> np.ndarray:
    """Base-``r`` code of every full window of length ``n``."""
    W = symbols.size - n + 1
    codes = np.zeros(W, dtype=np.int64)
    for j in range(n):
        codes *= r
        codes += symbols[j : j + W]
    return codes


def iter_window_codes(symbols: np.ndarray, r: int, n_max: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(n, codes)`` for n = 1, 2, ... while codes fit in int64.

    Each step reuses the previous codes, so the whole sweep is O(n_max * N).
    """
    codes = symbols.astype(np.int64)
    for n in range(1, n_max + 1):
        if n > 1:
            if r**n > INT_KEY_LIMIT:
                return
            codes = codes[:-1] * r + symbols[n - 1 :]
        yield n, codes


def _census(codes: np.ndarray, n_possible: int) -> tuple[np.ndarray, np.ndarray]:
    if n_possible <= DENSE_LIMIT:
        full = np.bincount(codes, minlength=n_possible)
        keys = np.flatnonzero(full).astype(np.int64)
        return keys, full[keys].astype(np.int64)
    keys, counts = np.unique(codes, return_counts=True)
    return keys.astype(np.int64), counts.astype(np.int64)


def _merge(parts: list[tuple[np.ndarray, np.ndarray]]) -> tuple[np.ndarray, np.ndarray]:
    if len(parts) == 1:
        return parts[0]
    keys = np.concatenate([k for k, _ in parts])
    weights = np.concatenate([c for _, c in parts])
    uniq, inverse = np.unique(keys, return_inverse=True)
    merged = np.zeros(uniq.size, dtype=np.int64)
    np.add.at(merged, inverse, weights)
    return uniq, merged


def thread_count() -> int:
    """Worker cap taken from ``SEQENTROPY_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("SEQENTROPY_THREADS", "1")))
    except ValueError:
        return 1


def count_words(x, n: int, N: int | None = None, chunks: int | None = None) -> WordCountTable:
    """Census of all length-``n`` windows among the first ``N`` symbols of ``x``.

    Parameters
    ----------
    x : SymbolSequence or array of ints
    n : int
        Word length, ``1 <= n <= N``.
    N : int, optional
        Prefix length to analyse; defaults to the whole sequence.
    chunks : int, optional
        Split the window range into this many pieces (overlapping by
        ``n - 1`` symbols) and merge; the result is identical to the
        sequential census. Defaults to ``SEQENTROPY_THREADS``.
    """
    x = _as_sequence(x)
    N = x.N if N is None else int(N)
    if not 1 <= N <= x.N:
        raise ValueError(f"prefix length {N} outside [1, {x.N}]")
    if not 1 <= n <= N:
        raise ValueError(f"word length n={n} must satisfy 1 <= n <= N={N}")
    r = x.alphabet_size
    s = x.symbols[:N]
    W = N - n + 1

    if r**n > INT_KEY_LIMIT:
        view = np.lib.stride_tricks.sliding_window_view(s, n)
        keys, counts = np.unique(view, axis=0, return_counts=True)
        return WordCountTable(n, N, r, keys, counts.astype(np.int64))

    chunks = thread_count() if chunks is None else max(1, int(chunks))
    chunks = min(chunks, W)
    bounds = np.linspace(0, W, chunks + 1).astype(int)

    def part(i):
        lo, hi = bounds[i], bounds[i + 1]
        return _census(window_codes(s[lo : hi + n - 1], n, r), r**n)

    if chunks == 1:
        parts = [part(0)]
    else:
        with ThreadPoolExecutor(max_workers=chunks) as pool:
            parts = list(pool.map(part, range(chunks)))
    keys, counts = _merge(parts)
    return WordCountTable(n, N, r, keys, counts)


def word_distribution(t: WordCountTable) -> MassDistribution:
    return MassDistribution(t.counts / t.window_total, t.n_possible)


def distinct_count(t: WordCountTable) -> int:
    return int(np.count_nonzero(t.counts))


def occurrences(x, w: Sequence[int], N: int | None = None) -> int:
    """Overlapping occurrences of ``w`` that end within the first ``N`` symbols."""
    x = _as_sequence(x)
    N = x.N if N is None else int(N)
    k = len(w)
    if k < 1:
        raise ValueError("empty word")
    if N > x.N:
        raise ValueError(f"N={N} exceeds sequence length {x.N}")
    if k > N:
        raise ValueError(f"word length {k} exceeds N={N}")
    s = x.symbols[:N]
    W = N - k + 1
    hit = np.ones(W, dtype=bool)
    for j, sym in enumerate(w):
        hit &= s[j : j + W] == sym
    return int(np.count_nonzero(hit))


def ones_count(b, N: int | None = None) -> int:
    b = _as_sequence(b, 2)
    if b.alphabet_size != 2:
        raise ValueError("ones_count needs a binary sequence")
    N = b.N if N is None else int(N)
    return int(np.count_nonzero(b.symbols[:N]))


def zero_word_frequency(b, n: int, N: int | None = None) -> float:
    """All-zero windows of length ``n`` in the first ``N`` symbols, over ``N - n``.

    The denominator is ``N - n`` rather than the window count ``N - n + 1``,
    so an all-zero sequence gives a value slightly above one.
    """
    b = _as_sequence(b, 2)
    if b.alphabet_size != 2:
        raise ValueError("zero_word_frequency needs a binary sequence")
    N = b.N if N is None else int(N)
    if N > b.N:
        raise ValueError(f"N={N} exceeds sequence length {b.N}")
    if n < 2 or n >= N:
        raise ValueError(f"need 2 <= n < N, got n={n}, N={N}")
    cs = np.concatenate(([0], np.cumsum(b.symbols[:N], dtype=np.int64)))
    zero_windows = np.count_nonzero(cs[n:] == cs[:-n])
    return zero_windows / (N - n)


# -- sequence files ---------------------------------------------------------

_CHUNK = 1 << 22


def sequence_chunks(x: SymbolSequence) -> Iterator[bytes]:
    """Encoded file content of ``x`` as a stream of byte chunks."""
    r = x.alphabet_size
    yield f"r={r} N={x.N}\n".encode("ascii")
    for lo in range(0, x.N, _CHUNK):
        chunk = x.symbols[lo : lo + _CHUNK]
        if r <= 10:
            yield (chunk + ord("0")).astype(np.uint8).tobytes()
        else:
            yield (b" " if lo else b"") + " ".join(map(str, chunk.tolist())).encode("ascii")
    yield b"\n"


def write_sequence(x: SymbolSequence, path) -> None:
    """Write ``x`` as ``r=<r> N=<N>`` followed by one line of symbols.

    ``path`` may also be an open binary stream.
    """
    if hasattr(path, "write"):
        for chunk in sequence_chunks(x):
            path.write(chunk)
        return
    with open(path, "wb") as fh:
        write_sequence(x, fh)


def read_sequence(path) -> SymbolSequence:
    """Read the header format above, or a raw file of ASCII ``0``/``1``."""
    data = Path(path).read_bytes()
    if data.startswith(b"r="):
        header, _, body = data.partition(b"\n")
        fields = dict(item.split(b"=", 1) for item in header.split())
        try:
            r, N = int(fields[b"r"]), int(fields[b"N"])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed sequence header {header!r}") from exc
        if r <= 10:
            raw = np.frombuffer(body.strip(), dtype=np.uint8)
            symbols = raw.astype(np.int16) - ord("0")
        else:
            symbols = np.array(body.split(), dtype=np.int64)
        if symbols.size != N:
            raise ValueError(f"header says N={N} but file holds {symbols.size} symbols")
        return SymbolSequence(symbols, r)
    raw = np.frombuffer(data, dtype=np.uint8)
    raw = raw[(raw != ord("\n")) & (raw != ord("\r")) & (raw != ord(" "))]
    if raw.size and not np.isin(raw, (ord("0"), ord("1"))).all():
        raise ValueError("raw sequence files may only contain ASCII 0 and 1")
    return SymbolSequence(raw.astype(np.int16) - ord("0"), 2)
