"""Gap series: powers of d, split d^k + e^l words, and theta/r2.

The characteristic word of {d^n} has one symbol 1 at every power of d
(including d^0 = 1).  For a multiplicatively independent pair (d, e)
the sum-of-two-powers word splits into a "b" word (representations
with d^k > e^l) and a "c" word (d^k < e^l); equality d^k = e^l only
happens at k = l = 0, which is why index 2 belongs to neither.  The
product of the two gap series then equals b + c plus a correction
supported on index 2 and on the finitely many collision indices where
n = d^k + e^l has several representations.

For (d, e) = (2, 3) the b word restricted to (2^n, 2^{n+1}] has a
rigid run-length shape exposed by b_block: ones at 2^n + 3^j and zero
runs of lengths alpha_j = 2*3^{j-1} - 1 with a trailing run of
beta_n = 2^n - 3^{m_n} zeros, where m_n is the greatest m with
3^m <= 2^n (computed by integer comparison).

theta_word is 1 + 2 * sum T^{-n^2}; its Cauchy square recovers the
sum-of-two-squares counts r2(n) mod p, and r2 itself ships with two
independent evaluators (lattice enumeration and the multiplicative
divisor formula) plus bulk sieves for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import FieldSpec
from .words import _DTYPE, InfiniteWord

__all__ = [
    "DEPairSpec",
    "CollisionReport",
    "lacunary_word",
    "de_word_b",
    "de_word_c",
    "collision_scan",
    "representation_counts",
    "product_decomposition_check",
    "BBlock",
    "b_block",
    "r2",
    "r2_bulk",
    "theta_word",
]

_INDEP_EXPONENT_BOUND = 64


@dataclass(frozen=True)
class DEPairSpec:
    """A multiplicatively independent base pair, optionally field-tagged."""

    d: int = 2
    e: int = 3
    spec: FieldSpec | None = None

    def __post_init__(self):
        if self.d < 2 or self.e < 2:
            raise ValueError("bases must be >= 2")
        powers_e = {self.e**b for b in range(1, _INDEP_EXPONENT_BOUND + 1)}
        for a in range(1, _INDEP_EXPONENT_BOUND + 1):
            if self.d**a in powers_e:
                raise ValueError("d and e must be multiplicatively independent")


@dataclass(frozen=True)
class CollisionReport:
    """All n <= bound with at least two representations n = d^k + e^l."""

    pair: DEPairSpec
    bound: int
    # ((n, ((k1, l1), (k2, l2), ...)), ...) sorted by n
    entries: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    def __post_init__(self):
        d, e = self.pair.d, self.pair.e
        for n, reps in self.entries:
            if len(reps) < 2 or any(d**k + e**l != n for k, l in reps):
                raise ValueError("malformed collision entry")

    @property
    def ns(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.entries)

    @property
    def threshold(self) -> int:
        """Largest colliding n found; all larger n <= bound are simple."""
        return self.entries[-1][0] if self.entries else 0


def _powers_below(base: int, bound: int) -> list[int]:
    out, v = [], 1
    while v <= bound:
        out.append(v)
        v *= base
    return out


def lacunary_word(d: int, label=None, field=None) -> InfiniteWord:
    """Characteristic word of {d^k : k >= 0}; symbol 1 marks a power."""
    if d < 2:
        raise ValueError("base must be >= 2")

    def fill(n):
        out = np.zeros(n, dtype=_DTYPE)
        for v in _powers_below(d, n - 1):
            out[v] = 1
        return out

    return InfiniteWord(2, fill, label or f"lac:d={d}", field=field)


def _de_fill(pair: DEPairSpec, keep):
    d, e = pair.d, pair.e

    def fill(n):
        out = np.zeros(n, dtype=_DTYPE)
        for k, dk in enumerate(_powers_below(d, n - 2)):
            for l, el in enumerate(_powers_below(e, n - 1 - dk)):
                if keep(dk, el):
                    out[dk + el] = 1
        return out

    return fill


def de_word_b(pair: DEPairSpec) -> InfiniteWord:
    """b_n = 1 iff n = d^k + e^l for some pair with d^k > e^l."""
    label = f"deb:d={pair.d},e={pair.e}"
    return InfiniteWord(2, _de_fill(pair, lambda x, y: x > y), label,
                        field=pair.spec)


def de_word_c(pair: DEPairSpec) -> InfiniteWord:
    """c_n = 1 iff n = d^k + e^l for some pair with d^k < e^l."""
    label = f"dec:d={pair.d},e={pair.e}"
    return InfiniteWord(2, _de_fill(pair, lambda x, y: x < y), label,
                        field=pair.spec)


def collision_scan(pair: DEPairSpec, N: int) -> CollisionReport:
    """Exhaustive representation scan of n = d^k + e^l up to N.

    Pure big-integer enumeration into a dict keyed by n; independent of
    the numpy sieve in representation_counts so the two can cross-check
    each other.
    """
    if N < 1:
        raise ValueError("bound must be >= 1")
    d, e = pair.d, pair.e
    reps: dict[int, list[tuple[int, int]]] = {}
    for k, dk in enumerate(_powers_below(d, N - 1)):
        for l, el in enumerate(_powers_below(e, N - dk)):
            reps.setdefault(dk + el, []).append((k, l))
    entries = tuple(
        (n, tuple(sorted(rs)))
        for n, rs in sorted(reps.items())
        if len(rs) >= 2
    )
    return CollisionReport(pair, N, entries)


def representation_counts(pair: DEPairSpec, N: int) -> np.ndarray:
    """Multiplicity of n = d^k + e^l for n = 0..N as an int64 sieve."""
    counts = np.zeros(N + 1, dtype=np.int64)
    dk_list = _powers_below(pair.d, N - 1)
    el_arr = np.asarray(_powers_below(pair.e, N - 1), dtype=np.int64)
    for dk in dk_list:
        sums = dk + el_arr[el_arr <= N - dk]
        np.add.at(counts, sums, 1)
    return counts


def product_decomposition_check(pair: DEPairSpec, N: int) -> bool:
    """Verify gap-product = b + c + correction exactly up to index N.

    The correction must vanish away from index 2 and collision indices,
    and everywhere it must equal (multiplicity - [has b-rep] - [has
    c-rep]) mod p, with multiplicities from the independent sieve.
    """
    from .laurent import ls_cauchy_mul, series_from_word

    if pair.spec is None:
        raise ValueError("pair spec carries no field")
    spec = pair.spec
    p = spec.p
    f = series_from_word(lacunary_word(pair.d), spec)
    g = series_from_word(lacunary_word(pair.e), spec)
    h = ls_cauchy_mul(f, g, N).tail.prefix(N + 1).astype(np.int64)

    b = de_word_b(pair).prefix(N + 1).astype(np.int64)
    c = de_word_c(pair).prefix(N + 1).astype(np.int64)
    diff = (h - b - c) % p

    counts = representation_counts(pair, N)
    expected = (counts - b - c) % p
    if not np.array_equal(diff, expected):
        return False
    allowed = np.zeros(N + 1, dtype=bool)
    if N >= 2:
        allowed[2] = True
    for n in collision_scan(pair, N).ns:
        allowed[n] = True
    support = np.nonzero(diff)[0]
    return bool(np.all(allowed[support]))


@dataclass(frozen=True)
class BBlock:
    """The b word over (2^n, 2^{n+1}] and its run-length data."""

    n: int
    word: np.ndarray
    m_n: int
    alphas: tuple[int, ...]
    beta: int


def b_block(pair: DEPairSpec, n: int) -> BBlock:
    """Decompose b over positions [2^n + 1, 2^{n+1}] into runs.

    Ones sit at 2^n + 3^j for j = 0..m_n with zero runs alpha_j =
    2*3^{j-1} - 1 between them and beta_n = 2^n - 3^{m_n} zeros at the
    end; the decomposition is rebuilt and compared against the sieved
    word before returning.
    """
    if (pair.d, pair.e) != (2, 3):
        raise ValueError("blocks are defined for (d,e)=(2,3)")
    if n < 1:
        raise ValueError("block index must be >= 1")
    lo, hi = 2**n + 1, 2 ** (n + 1)
    word = de_word_b(pair).prefix(hi + 1)[lo :].copy()
    word.setflags(write=False)

    m_n = 0
    while 3 ** (m_n + 1) <= 2**n:
        m_n += 1
    alphas = tuple(2 * 3 ** (i - 1) - 1 for i in range(1, m_n + 1))
    beta = 2**n - 3**m_n

    rebuilt = [1]
    for a in alphas:
        rebuilt.extend([0] * a)
        rebuilt.append(1)
    rebuilt.extend([0] * beta)
    if rebuilt != word.tolist():
        raise RuntimeError(f"block structure mismatch at n={n}")
    return BBlock(n, word, m_n, alphas, beta)


# ---------------------------------------------------------------------------
# sums of two squares


def r2(n: int, mode: str = "formula") -> int:
    """Number of (x, y) in Z^2 with x^2 + y^2 = n (ordered, signed)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    if mode == "bruteforce":
        total = 0
        for x in range(math.isqrt(n) + 1):
            rem = n - x * x
            y = math.isqrt(rem)
            if y * y == rem:
                total += (1 if x == 0 else 2) * (1 if y == 0 else 2)
        return total
    if mode == "formula":
        return _r2_formula(n)
    raise ValueError(f"unknown mode {mode!r}")


def _r2_formula(n: int) -> int:
    # 4 * prod (a_i + 1) over primes 1 mod 4; zero if any 3 mod 4 prime
    # appears to an odd power; powers of 2 are inert.
    out = 4
    m = n
    while m % 2 == 0:
        m //= 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            if p % 4 == 3:
                if a % 2:
                    return 0
            else:
                out *= a + 1
        p += 2
    if m > 1:
        if m % 4 == 3:
            return 0
        out *= 2
    return out


def r2_bulk(N: int, mode: str = "formula") -> np.ndarray:
    """r2(n) for n = 0..N; lattice sieve or SPF-driven formula."""
    if mode == "bruteforce":
        counts = np.zeros(N + 1, dtype=np.int64)
        top = math.isqrt(N)
        for x in range(top + 1):
            ys = np.arange(math.isqrt(N - x * x) + 1, dtype=np.int64)
            w = np.full(ys.size, 4 if x else 2, dtype=np.int64)
            w[0] //= 2
            np.add.at(counts, x * x + ys * ys, w)
        return counts
    if mode != "formula":
        raise ValueError(f"unknown mode {mode!r}")
    spf = np.zeros(N + 1, dtype=np.int64)
    spf[2::2] = 2
    for p in range(3, math.isqrt(N) + 1, 2):
        if spf[p] == 0:
            seg = spf[p * p :: 2 * p]
            seg[seg == 0] = p
    odd = np.arange(3, N + 1, 2)
    rest = odd[spf[odd] == 0]
    spf[rest] = rest
    out = np.zeros(N + 1, dtype=np.int64)
    out[0] = 1
    for n in range(1, N + 1):
        m = n
        val = 4
        while m % 2 == 0:
            m //= 2
        while m > 1:
            p = int(spf[m])
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            if p % 4 == 3:
                if a % 2:
                    val = 0
                    break
            else:
                val *= a + 1
        out[n] = val
    return out


def theta_word(spec: FieldSpec, label="theta") -> InfiniteWord:
    """a_0 = 1, a_n = 2 at perfect squares n >= 1, else 0."""
    if spec.p < 3:
        raise ValueError("theta requires characteristic >= 3")

    def fill(n):
        out = np.zeros(n, dtype=_DTYPE)
        if n:
            out[0] = 1
        s = 1
        while s * s < n:
            out[s * s] = 2
            s += 1
        return out

    return InfiniteWord(3, fill, label, field=spec)
