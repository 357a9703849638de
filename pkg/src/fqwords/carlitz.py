"""The coefficient word of the inverse Carlitz product, and its blocks.

Expanding prod_{j>=1} (1 - T^{-(q^j-1)}) gives a series whose T^{-n}
coefficient p_n is (-1)^|J| whenever n admits a representation
n = sum_{j in J} (q^j - 1) with J a finite set of distinct positive
integers, and 0 otherwise (p_0 = 1 from the empty set).  The
representation, when it exists, is unique; production code finds it
greedily (largest part first, parts strictly decreasing) and the test
suite validates greediness against an exhaustive subset-sum oracle.

Two independent generators emit the word (p_n)_{n>=0}:

definition -- evaluates the decomposition rule per index, vectorized:
all indices walk down the part list in lockstep, each keeping its own
remainder, last-part bound and sign parity.

blocks -- streams the self-similar block factorization.  With
U_1 = (-1) 0^(q-2) and alpha_n = (q^(n+1)-1) - 2(q^n-1), the recursion
U_{n+1} = U_n hat(U_n) 0^(alpha_n) (hat = negate every symbol) builds
doubling buffers, and the word is 1 0^(q-2) U_1 0^(alpha_1) U_2
0^(alpha_2) ...  For q = 2 this degenerates to the 0^0 / alpha_n = 1
case and reproduces W_n = U_n 0 with U_{n+1} = U_n U_n 0.

The direct product Pi_q = sum a_n T^{-n} has a_n = (number of
partitions of n into parts q^j - 1) mod p, computed by a strided-cumsum
dynamic program; verify_unit_convolution checks Pi_q * (1/Pi_q) = 1 on
a prefix.

Symbols are canonical field indices in the prime subfield {0, 1, p-1};
in characteristic 2 the two nonzero symbols coincide and the block
structure degenerates without special casing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fqwords.convolve import exact_convolve
from fqwords.field import FieldElement, FieldSpec, field
from fqwords.words import InfiniteWord, _DTYPE

__all__ = [
    "decompose",
    "pq_symbol",
    "pq_word",
    "pq_word_definition",
    "pq_word_blocks",
    "pi_q_coefficient",
    "pi_word",
    "verify_unit_convolution",
    "block",
    "BlockEntry",
    "MAX_BLOCK",
]

MAX_BLOCK = 1 << 26


def _parts(q: int, bound: int) -> list[int]:
    """q^j - 1 for j >= 1, up to bound."""
    out = []
    v = q
    while v - 1 <= bound:
        out.append(v - 1)
        v *= q
    return out


def decompose(n: int, q: int):
    """The unique J with n = sum_{j in J} (q^j - 1), or None.

    Greedy: the largest part q^j - 1 <= n is forced (the smaller parts
    sum to less), so take it and recurse with strictly smaller j.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if q < 2:
        raise ValueError("q must be >= 2")
    J = []
    prev = None
    while n > 0:
        j = 1
        while q ** (j + 1) - 1 <= n:
            j += 1
        if prev is not None:
            j = min(j, prev - 1)
        if j < 1 or q**j - 1 > n:
            return None
        J.append(j)
        n -= q**j - 1
        prev = j
    return set(J)


def pq_symbol(n: int, q: int, spec: FieldSpec) -> FieldElement:
    """p_n as a field element: (-1)^|J| if J exists, else 0."""
    J = decompose(n, q)
    if J is None:
        return FieldElement(spec, 0)
    return FieldElement(spec, spec.embed_int((-1) ** len(J)))


def _definition_fill(q: int, spec: FieldSpec, n: int) -> np.ndarray:
    parts = np.array(_parts(q, max(n - 1, 0)), dtype=np.int64)
    one = spec.embed_int(1)
    minus = spec.embed_int(-1)
    r = np.arange(n, dtype=np.int64)
    prev = np.full(n, parts.size, dtype=np.int64)  # next part index must be < prev
    parity = np.zeros(n, dtype=np.int8)
    failed = np.zeros(n, dtype=bool)
    idx = np.nonzero(r > 0)[0]
    while idx.size:
        jmax = np.searchsorted(parts, r[idx], side="right") - 1
        j = np.minimum(jmax, prev[idx] - 1)
        bad = j < 0
        failed[idx[bad]] = True
        io = idx[~bad]
        jo = j[~bad]
        r[io] -= parts[jo]
        prev[io] = jo
        parity[io] ^= 1
        idx = io[r[io] > 0]
    out = np.where(failed, 0, np.where(parity == 1, minus, one))
    return out.astype(_DTYPE)


def pq_word_definition(q: int, spec: FieldSpec | None = None) -> InfiniteWord:
    spec = spec or field(q)
    return InfiniteWord(
        spec.q,
        lambda n: _definition_fill(q, spec, n),
        f"carlitz:q={q};engine=definition",
        field=spec,
    )


def _blocks_fill(q: int, spec: FieldSpec, n: int) -> np.ndarray:
    neg = np.asarray(spec.neg_table, dtype=_DTYPE)
    one = spec.embed_int(1)
    minus = spec.embed_int(-1)
    pieces = [
        np.array([one], dtype=_DTYPE),
        np.zeros(q - 2, dtype=_DTYPE),
    ]
    total = q - 1
    u = np.concatenate(
        [np.array([minus], dtype=_DTYPE), np.zeros(q - 2, dtype=_DTYPE)]
    )
    level = 1
    while total < n:
        alpha = (q ** (level + 1) - 1) - 2 * (q**level - 1)
        pieces.append(u)
        pieces.append(np.zeros(alpha, dtype=_DTYPE))
        total += u.size + alpha
        if total < n:
            u = np.concatenate([u, neg[u], np.zeros(alpha, dtype=_DTYPE)])
        level += 1
    return np.concatenate(pieces)


def pq_word_blocks(q: int, spec: FieldSpec | None = None) -> InfiniteWord:
    spec = spec or field(q)
    return InfiniteWord(
        spec.q,
        lambda n: _blocks_fill(q, spec, n),
        f"carlitz:q={q}",
        field=spec,
    )


def pq_word(q: int, spec: FieldSpec | None = None, engine: str = "blocks"):
    if engine == "blocks":
        return pq_word_blocks(q, spec)
    if engine == "definition":
        return pq_word_definition(q, spec)
    raise ValueError(f"unknown carlitz engine {engine!r}")


# ---------------------------------------------------------------------------
# Pi_q itself


def _pi_counts_mod_p(q: int, p: int, n: int) -> np.ndarray:
    """Partition counts with parts in {q^j - 1}, each reduced mod p."""
    cnt = np.zeros(n, dtype=np.int64)
    if n:
        cnt[0] = 1
    for part in _parts(q, n - 1):
        rows = -(-n // part)
        padded = np.zeros(rows * part, dtype=np.int64)
        padded[:n] = cnt
        view = padded.reshape(rows, part)
        np.cumsum(view, axis=0, out=view)  # cnt[i] += cnt[i - part], transitively
        cnt = padded[:n] % p
    return cnt


def pi_q_coefficient(n: int, q: int, spec: FieldSpec) -> FieldElement:
    """a_n = partition count of n (parts q^j - 1) mod p, embedded."""
    counts = _pi_counts_mod_p(q, spec.p, n + 1)
    return FieldElement(spec, spec.embed_int(int(counts[n])))


def pi_word(q: int, spec: FieldSpec | None = None) -> InfiniteWord:
    spec = spec or field(q)

    def fill(n):
        return _pi_counts_mod_p(q, spec.p, n).astype(_DTYPE)

    return InfiniteWord(spec.q, fill, f"pi:q={q}", field=spec)


def verify_unit_convolution(q: int, N: int, spec: FieldSpec | None = None) -> bool:
    """Check sum_i a_i p_{n-i} = [n = 0] in F_q for all n <= N.

    Both words take values in the prime subfield, where the canonical
    index of an element equals its residue, so integer convolution
    reduced mod p computes the field convolution.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    spec = spec or field(q)
    p_arr = pq_word_blocks(q, spec).prefix(N + 1)
    a_arr = pi_word(q, spec).prefix(N + 1)
    conv = exact_convolve(a_arr, p_arr)[: N + 1] % spec.p
    return bool(conv[0] == 1 and not conv[1:].any())


# ---------------------------------------------------------------------------
# block structure accessors


@dataclass(frozen=True)
class BlockEntry:
    q: int
    n: int
    W: np.ndarray
    U: np.ndarray
    alpha: int


def _u_word(q: int, n: int, spec: FieldSpec) -> np.ndarray:
    neg = np.asarray(spec.neg_table, dtype=_DTYPE)
    u = np.concatenate(
        [
            np.array([spec.embed_int(-1)], dtype=_DTYPE),
            np.zeros(q - 2, dtype=_DTYPE),
        ]
    )
    for level in range(1, n):
        alpha = (q ** (level + 1) - 1) - 2 * (q**level - 1)
        u = np.concatenate([u, neg[u], np.zeros(alpha, dtype=_DTYPE)])
    return u


def block(q: int, n: int, spec: FieldSpec | None = None) -> BlockEntry:
    """Explicit W_n, U_n and the zero-run exponent alpha_n."""
    spec = spec or field(q)
    if n < 0:
        raise ValueError("n must be >= 0")
    size = 2**n if q == 2 else q**n * (q - 1)
    if size > MAX_BLOCK:
        raise ValueError(f"|W_{n}| = {size} exceeds cap {MAX_BLOCK}")
    if q == 2:
        if n == 0:
            one = np.array([1], dtype=_DTYPE)
            return BlockEntry(q, 0, one, one, 0)
        u = _u_word(2, n, spec)
        w = np.concatenate([u, np.zeros(1, dtype=_DTYPE)])
        return BlockEntry(q, n, w, u, 1)
    if n == 0:
        w0 = np.zeros(q - 2, dtype=_DTYPE)
        return BlockEntry(q, 0, w0, w0, 0)
    alpha = (q ** (n + 1) - 1) - 2 * (q**n - 1)
    u = _u_word(q, n, spec)
    w = np.concatenate([u, np.zeros(alpha, dtype=_DTYPE)])
    return BlockEntry(q, n, w, u, alpha)
