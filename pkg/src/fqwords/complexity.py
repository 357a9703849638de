"""Factor-counting engines and complexity diagnostics.

p(m) is the number of distinct length-m contiguous blocks of a finite
prefix.  Two independent engines compute it:

profile_naive -- the reference semantics: insert every window into a
set.  For window lengths whose base-sigma integer encoding fits in 64
bits it uses an equivalent vectorized path (rolling codes + np.unique);
beyond that it hashes raw byte windows.  Both paths realize the same
set-of-windows count.

profile_fast -- a suffix automaton over the prefix.  Every state
canonically represents the factor lengths in [minlen, maxlen] =
[len(link)+1, len], each exactly once, so accumulating those intervals
into a difference array yields p(m) for every m in one O(N) pass.  The
construction loop is JIT-compiled (numba) with flat preallocated
transition/link/length arrays; alphabets are densified to [0, sigma)
first so the dense transition table stays small.

Profiles record engine, N and the source label, making every reported
number reproducible from its CSV row alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from numba import njit

__all__ = [
    "ComplexityProfile",
    "profile_naive",
    "profile_fast",
    "profile_word",
    "factor_set",
    "entropy_estimate",
    "morse_hedlund_diagnostic",
    "MorseHedlundReport",
]


@dataclass(frozen=True)
class ComplexityProfile:
    """Counts p(1..M) measured on a length-N prefix."""

    prefix_length: int
    max_length: int
    counts: tuple[int, ...]
    source: str
    engine: str
    alphabet_size: int

    def p(self, m: int) -> int:
        if not 1 <= m <= self.max_length:
            raise IndexError(f"m={m} outside profile range 1..{self.max_length}")
        return self.counts[m - 1]

    def validate(self) -> None:
        n, m_max, sigma = self.prefix_length, self.max_length, self.alphabet_size
        p = np.asarray(self.counts, dtype=np.int64)
        for m in range(1, m_max + 1):
            cap = n - m + 1
            if m * math.log2(max(sigma, 2)) < 62:
                cap = min(cap, sigma**m)
            if not 1 <= p[m - 1] <= cap:
                raise AssertionError(f"p({m})={p[m-1]} outside [1, {cap}]")
        if m_max >= 2:
            if (p[:-1] > p[1:] + 1).any():
                raise AssertionError("p(m) <= p(m+1) + 1 violated")
            if (p[1:] > sigma * p[:-1]).any():
                raise AssertionError("p(m+1) <= sigma p(m) violated")
        for m in range(1, m_max):
            rest = p[: m_max - m]  # p(1..M-m)
            if (p[m:] > p[m - 1] * rest).any():
                raise AssertionError(f"submultiplicativity fails at m={m}")

    def csv_rows(self):
        for m in range(1, self.max_length + 1):
            yield (self.source, self.engine, self.prefix_length, m, self.counts[m - 1])


def _as_symbols(prefix) -> np.ndarray:
    if isinstance(prefix, str):
        arr = np.fromiter((ord(c) for c in prefix), dtype=np.int64)
    else:
        arr = np.asarray(prefix, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("prefix must be a nonempty 1-d symbol sequence")
    if int(arr.min()) < 0:
        raise ValueError("symbols must be nonnegative")
    return arr


def _dense_ranks(codes: np.ndarray) -> np.ndarray:
    return np.unique(codes, return_inverse=True)[1].astype(np.int64)


def _count_distinct(codes: np.ndarray) -> int:
    s = np.sort(codes)
    return 1 + int((s[1:] != s[:-1]).sum()) if s.size else 0


def profile_naive(prefix, max_m: int, source: str = "explicit") -> ComplexityProfile:
    """Reference engine: distinct windows per length, without automata.

    Small windows are counted through rolling base-sigma codes; once a
    window no longer fits in 62 bits the engine switches to rank
    doubling: dense ranks of length-2^k windows are combined pairwise,
    and any window of length m in [2^k, 2^(k+1)] is named by the ranks
    of its two overlapping length-2^k halves.
    """
    arr = _as_symbols(prefix)
    n = arr.size
    if max_m > n:
        raise ValueError(f"max_m={max_m} exceeds prefix length {n}")
    sigma = int(arr.max()) + 1
    counts = []
    codes = None  # rolling base-sigma window codes for the current m
    encodable_m = 62 // max(1, math.ceil(math.log2(max(sigma, 2))))
    ranks = None  # dense ranks of length-2^rank_k windows
    rank_k = 0
    for m in range(1, max_m + 1):
        if m <= encodable_m and sigma**m < (1 << 62):
            if codes is None:
                codes = arr.copy()
            else:
                codes = codes[: n - m + 1] * sigma + arr[m - 1 :]
            counts.append(_count_distinct(codes[: n - m + 1]))
            continue
        if ranks is None:
            ranks = _dense_ranks(arr)
        while (1 << (rank_k + 1)) <= m:
            half = 1 << rank_k
            width = ranks.size - half  # length-2^(k+1) window count
            ranks = _dense_ranks(
                ranks[:width] * (int(ranks.max()) + 1) + ranks[half : half + width]
            )
            rank_k += 1
        lead = n - m + 1
        d = m - (1 << rank_k)
        pair = ranks[:lead] * (int(ranks.max()) + 1) + ranks[d : d + lead]
        counts.append(_count_distinct(pair))
    prof = ComplexityProfile(n, max_m, tuple(counts), source, "naive", sigma)
    prof.validate()
    return prof


@njit(cache=True)
def _sam_length_diff(arr, sigma, max_m):  # pragma: no cover - jitted
    n = arr.size
    cap = 2 * n + 5
    trans = np.full(cap * sigma, -1, dtype=np.int32)
    link = np.empty(cap, dtype=np.int32)
    length = np.empty(cap, dtype=np.int32)
    link[0] = -1
    length[0] = 0
    size = 1
    last = 0
    for i in range(n):
        c = arr[i]
        cur = size
        size += 1
        length[cur] = length[last] + 1
        link[cur] = 0
        p = last
        while p >= 0 and trans[p * sigma + c] < 0:
            trans[p * sigma + c] = cur
            p = link[p]
        if p >= 0:
            q = trans[p * sigma + c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                length[clone] = length[p] + 1
                link[clone] = link[q]
                for d in range(sigma):
                    trans[clone * sigma + d] = trans[q * sigma + d]
                while p >= 0 and trans[p * sigma + c] == q:
                    trans[p * sigma + c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    diff = np.zeros(max_m + 2, dtype=np.int64)
    for v in range(1, size):
        lo = length[link[v]] + 1
        hi = length[v]
        if lo > max_m:
            continue
        if hi > max_m:
            hi = max_m
        diff[lo] += 1
        diff[hi + 1] -= 1
    return diff


def profile_fast(prefix, max_m: int, source: str = "explicit") -> ComplexityProfile:
    """Suffix-automaton engine; counts for all m in one pass."""
    arr = _as_symbols(prefix)
    n = arr.size
    if max_m > n:
        raise ValueError(f"max_m={max_m} exceeds prefix length {n}")
    sigma_raw = int(arr.max()) + 1
    values, dense = np.unique(arr, return_inverse=True)
    diff = _sam_length_diff(
        dense.astype(np.int32), np.int64(values.size), np.int64(max_m)
    )
    counts = np.cumsum(diff)[1 : max_m + 1]
    prof = ComplexityProfile(
        n, max_m, tuple(int(c) for c in counts), source, "fast", sigma_raw
    )
    prof.validate()
    return prof


def profile_word(word, n: int, max_m: int, engine: str = "fast") -> ComplexityProfile:
    """Profile the length-n prefix of an InfiniteWord."""
    fn = profile_fast if engine == "fast" else profile_naive
    return fn(word.prefix(n), max_m, source=word.label)


def factor_set(prefix, m: int) -> set[tuple[int, ...]]:
    """The explicit set of distinct length-m factors (small m)."""
    arr = _as_symbols(prefix)
    if m > arr.size:
        raise ValueError(f"m={m} exceeds prefix length {arr.size}")
    sigma = int(arr.max()) + 1
    n = arr.size
    if sigma**m < (1 << 62):
        codes = arr[: n - m + 1].copy()
        for i in range(1, m):
            codes = codes * sigma + arr[i : n - m + 1 + i]
        uniq = np.unique(codes)
        out = set()
        for code in uniq.tolist():
            w = []
            for _ in range(m):
                w.append(code % sigma)
                code //= sigma
            out.add(tuple(reversed(w)))
        return out
    return {tuple(arr[i : i + m].tolist()) for i in range(n - m + 1)}


def entropy_estimate(profile: ComplexityProfile, m: int, base: int) -> float:
    """log_base(p(m)) / m."""
    return math.log(profile.p(m), base) / m


@dataclass(frozen=True)
class MorseHedlundReport:
    """Prefix-level periodicity heuristic, not a proof about the word."""

    candidate_m: int | None
    strictly_increasing: bool
    note: str = dc_field(
        default="prefix-level heuristic: p(m) <= m on a finite prefix "
        "suggests, but does not prove, eventual periodicity"
    )


def morse_hedlund_diagnostic(profile: ComplexityProfile) -> MorseHedlundReport:
    candidate = None
    for m in range(1, profile.max_length + 1):
        if profile.p(m) <= m:
            candidate = m
            break
    p = profile.counts
    strict = all(p[i] < p[i + 1] for i in range(len(p) - 1))
    return MorseHedlundReport(candidate_m=candidate, strictly_increasing=strict)
