"""Deterministic infinite symbol streams.

Every generator is wrapped in an InfiniteWord whose backing source is a
pure function fill(n) -> numpy array of at least n symbols.  Prefixes
are cached in a growable buffer with geometric doubling, so refilling
from scratch on growth costs O(final length) amortized; restartability
and determinism come for free from the purity of fill.

Symbols are small nonnegative integers in [0, alphabet_size).  A word
over a finite field stores canonical field-element indices (see
fqwords.field), which lets one set of engines serve both abstract
alphabets and field alphabets.  Rotation words use exact integer
arithmetic throughout: floor(n*alpha) for a quadratic irrational is
computed with integer square roots, never floating point (floats are
only a first guess, bracketed and corrected).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt

import numpy as np

from fqwords.field import FieldSpec

__all__ = [
    "InfiniteWord",
    "Morphism",
    "DFAO",
    "QuadraticIrrational",
    "periodic_word",
    "morphic_fixed_point",
    "automatic_word",
    "load_dfao",
    "cantor_word",
    "rotation_word",
    "champernowne_word",
    "word_pointwise_add",
    "word_pointwise_mul",
    "explicit_word",
    "morphism_growth",
]

MAX_PREFIX = 1 << 27  # guard against runaway materialization

_DTYPE = np.int16


class InfiniteWord:
    """An infinite word backed by a restartable deterministic source.

    fill(n) must be pure: it returns the first >= n symbols of the word
    as a numpy array, identically on every call.  prefix() caches; the
    cache is an immutable snapshot safe to share between workers.
    """

    def __init__(self, alphabet_size, fill, label, field=None, limit=None,
                 limit_msg="word has no symbols beyond its limit"):
        self.alphabet_size = int(alphabet_size)
        self._fill = fill
        self.label = label
        self.field = field
        self.limit = limit
        self._limit_msg = limit_msg
        self._buf = np.empty(0, dtype=_DTYPE)

    def prefix(self, n: int) -> np.ndarray:
        if self.limit is not None and n > self.limit:
            raise ValueError(self._limit_msg)
        if n > MAX_PREFIX:
            raise ValueError(f"prefix length {n} exceeds cap {MAX_PREFIX}")
        if n > self._buf.size:
            target = max(n, min(2 * self._buf.size, MAX_PREFIX), 1024)
            if self.limit is not None:
                target = min(target, self.limit)
            buf = np.asarray(self._fill(target), dtype=_DTYPE)[:target]
            if buf.size < n:
                raise RuntimeError(f"generator for {self.label} ran short")
            if buf.size and (
                int(buf.min()) < 0 or int(buf.max()) >= self.alphabet_size
            ):
                raise ValueError(f"symbol out of range in {self.label}")
            buf.setflags(write=False)
            self._buf = buf
        return self._buf[:n]

    def symbol_at(self, n: int) -> int:
        return int(self.prefix(n + 1)[n])

    def recompute_prefix(self, n: int) -> np.ndarray:
        """Fresh restart of the source, bypassing the cache."""
        return np.asarray(self._fill(n), dtype=_DTYPE)[:n].copy()

    def __repr__(self):
        return f"InfiniteWord({self.label})"


def _fill_from_iter(make_iter):
    def fill(n):
        return np.fromiter(
            itertools.islice(make_iter(), n), dtype=_DTYPE, count=n
        )

    return fill


def explicit_word(symbols, alphabet_size=None, label="explicit", field=None,
                  limit_msg=None):
    """A word given by an explicit finite prefix (reads past it fail)."""
    arr = np.asarray(symbols, dtype=_DTYPE)
    sigma = (
        int(alphabet_size)
        if alphabet_size is not None
        else int(arr.max(initial=0)) + 1
    )
    return InfiniteWord(
        sigma,
        lambda n: arr,
        label,
        field=field,
        limit=arr.size,
        limit_msg=limit_msg or f"explicit word has only {arr.size} symbols",
    )


# ---------------------------------------------------------------------------
# periodic


def periodic_word(preperiod, period, label=None, field=None):
    """U then V repeated forever."""
    u = np.asarray(list(preperiod), dtype=_DTYPE)
    v = np.asarray(list(period), dtype=_DTYPE)
    if v.size == 0:
        raise ValueError("period must be nonempty")
    sigma = int(max(u.max(initial=0), v.max(initial=0))) + 1

    def fill(n):
        reps = max(0, (n - u.size + v.size - 1) // v.size) + 1
        return np.concatenate([u, np.tile(v, reps)])

    if label is None:
        ustr = "".join(map(str, u.tolist()))
        vstr = "".join(map(str, v.tolist()))
        label = f"periodic:{ustr}|{vstr}"
    return InfiniteWord(sigma, fill, label, field=field)


# ---------------------------------------------------------------------------
# morphic


@dataclass(frozen=True)
class Morphism:
    """Letter -> finite word, extended to words by concatenation."""

    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sigma = len(self.images)
        for img in self.images:
            if len(img) == 0:
                raise ValueError("empty image")
            if any(not (0 <= x < sigma) for x in img):
                raise ValueError("image letter out of range")

    @property
    def alphabet_size(self) -> int:
        return len(self.images)

    def apply(self, word) -> np.ndarray:
        parts = [np.asarray(self.images[int(x)], dtype=_DTYPE) for x in word]
        if not parts:
            return np.empty(0, dtype=_DTYPE)
        return np.concatenate(parts)

    def is_prolongable_on(self, seed: int) -> bool:
        img = self.images[seed]
        return len(img) >= 2 and img[0] == seed

    def incidence_matrix(self):
        """M[x][y] = occurrences of y in images[x], as Python ints."""
        sigma = self.alphabet_size
        return [
            [self.images[x].count(y) for y in range(sigma)]
            for x in range(sigma)
        ]


def _mat_mul(a, b):
    size = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)]
        for i in range(size)
    ]


def _mat_pow(m, e):
    size = len(m)
    result = [[int(i == j) for j in range(size)] for i in range(size)]
    base = m
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        e >>= 1
    return result


def morphism_growth(sigma: Morphism, x: int, n: int) -> int:
    """|sigma^n(x)| via the n-th incidence-matrix power (exact ints)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    m = _mat_pow(sigma.incidence_matrix(), n)
    return sum(m[x])


def morphic_fixed_point(sigma, seed, coding=None, label=None, field=None):
    """The fixed point sigma^infinity(seed), optionally letterwise coded.

    Generation expands the word in chunks against its own growing
    buffer (w = sigma(w)), so it materializes only O(consumed) symbols.
    """
    if not sigma.is_prolongable_on(seed):
        raise ValueError("not prolongable")
    images = [np.asarray(im, dtype=_DTYPE) for im in sigma.images]
    flat = np.concatenate(images)
    lens = np.array([im.size for im in images], dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(lens)[:-1]])
    maxlen = int(lens.max())
    code_arr = None
    out_sigma = sigma.alphabet_size
    if coding is not None:
        code_arr = np.asarray(list(coding), dtype=_DTYPE)
        if code_arr.size != sigma.alphabet_size:
            raise ValueError("coding must cover the whole alphabet")
        out_sigma = int(code_arr.max()) + 1

    def fill(n):
        chunk = 1 << 16
        cap = n + chunk * maxlen + images[seed].size
        buf = np.empty(cap, dtype=_DTYPE)
        used = images[seed].size
        buf[:used] = images[seed]
        j = 1  # next input position to expand; buf[:used] = sigma(w[:j])
        while used < n:
            take = min(chunk, used - j, (cap - used) // maxlen)
            if take <= 0:
                raise ValueError("fixed point is finite")
            part = buf[j : j + take]
            ls = lens[part]
            total = int(ls.sum())
            ends = np.cumsum(ls)
            idx = np.repeat(starts[part], ls) + np.arange(total) - np.repeat(
                ends - ls, ls
            )
            buf[used : used + total] = flat[idx]
            used += total
            j += take
        out = buf[:n]
        return code_arr[out] if code_arr is not None else out

    if label is None:
        imgs = ",".join(
            f"{i}->" + "".join(map(str, im)) for i, im in enumerate(sigma.images)
        )
        label = f"morphic:{imgs};seed={seed}"
        if coding is not None:
            label += ";coding=" + "".join(map(str, coding))
    return InfiniteWord(out_sigma, fill, label, field=field)


# ---------------------------------------------------------------------------
# automatic


@dataclass(frozen=True)
class DFAO:
    """Deterministic finite automaton with output, reading base-k digits."""

    base: int
    transitions: tuple[tuple[int, ...], ...]  # [state][digit] -> state
    initial: int
    output: tuple[int, ...]
    msb_first: bool = True

    def __post_init__(self):
        k, m = self.base, len(self.transitions)
        if k < 2:
            raise ValueError("base must be >= 2")
        if not (0 <= self.initial < m) or len(self.output) != m:
            raise ValueError("initial state or output map out of range")
        for row in self.transitions:
            if len(row) != k or any(not (0 <= s < m) for s in row):
                raise ValueError("transition table not total")
        if self.msb_first and self.transitions[self.initial][0] != self.initial:
            raise ValueError(
                "msb-first DFAO must loop on digit 0 at the initial state"
            )

    def run(self, digits) -> int:
        s = self.initial
        for d in digits:
            s = self.transitions[s][d]
        return s

    def symbol(self, n: int) -> int:
        digits = []
        while n:
            digits.append(n % self.base)
            n //= self.base
        if self.msb_first:
            digits.reverse()
        return self.output[self.run(digits)]


def automatic_word(dfao: DFAO, label=None, field=None):
    """Word with symbol n = output(state after the digits of n)."""
    out_arr = np.asarray(dfao.output, dtype=_DTYPE)
    sigma = int(out_arr.max()) + 1
    k = dfao.base
    trans_flat = np.asarray(
        [s for row in dfao.transitions for s in row], dtype=np.int32
    )

    if dfao.msb_first:
        # states[i] = delta(states[i // k], i % k); waves keep i // k resolved
        def fill(n):
            states = np.empty(max(n, 1), dtype=np.int32)
            states[0] = dfao.initial
            lo = 1
            while lo < n:
                hi = min(n, lo * k)
                i = np.arange(lo, hi)
                states[lo:hi] = trans_flat[states[i // k] * k + i % k]
                lo = hi
            return out_arr[states[:n]]

    else:

        def fill(n):
            return np.fromiter(
                (dfao.symbol(i) for i in range(n)), dtype=_DTYPE, count=n
            )

    return InfiniteWord(sigma, fill, label or "dfao:<inline>", field=field)


def load_dfao(text: str) -> DFAO:
    """Parse the line-oriented DFAO format.

    Lines: `base k`, `states n`, `initial i`, `trans s d s'`, `out s v`;
    blank lines and `#` comments are ignored.
    """
    base = states = initial = None
    trans_items: list[tuple[int, int, int]] = []
    out_items: dict[int, int] = {}
    order = "msb"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "base":
                base = int(parts[1])
            elif parts[0] == "states":
                states = int(parts[1])
            elif parts[0] == "initial":
                initial = int(parts[1])
            elif parts[0] == "trans":
                trans_items.append((int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "out":
                out_items[int(parts[1])] = int(parts[2])
            elif parts[0] == "order":
                order = parts[1]
            else:
                raise ValueError
        except (IndexError, ValueError):
            raise ValueError(f"bad DFAO line {lineno}: {raw!r}") from None
    if base is None or states is None or initial is None:
        raise ValueError("DFAO file must declare base, states, initial")
    table = [[-1] * base for _ in range(states)]
    for s, d, s2 in trans_items:
        if not (0 <= s < states and 0 <= d < base and 0 <= s2 < states):
            raise ValueError(f"transition out of range: {s} {d} {s2}")
        table[s][d] = s2
    if any(-1 in row for row in table):
        raise ValueError("transition table not total")
    if set(out_items) != set(range(states)):
        raise ValueError("output map not total")
    return DFAO(
        base=base,
        transitions=tuple(tuple(row) for row in table),
        initial=initial,
        output=tuple(out_items[s] for s in range(states)),
        msb_first=(order != "lsb"),
    )


# ---------------------------------------------------------------------------
# cantor


def cantor_word(label="cantor", field=None):
    """c_n = 1 iff the base-3 expansion of n avoids the digit 1."""

    def fill(n):
        ok = np.ones(n, dtype=bool)
        x = np.arange(n, dtype=np.int64)
        while x.any():
            ok &= x % 3 != 1
            x //= 3
        return ok.astype(_DTYPE)

    return InfiniteWord(2, fill, label, field=field)


# ---------------------------------------------------------------------------
# rotation


def _squarefree(d: int) -> bool:
    if d < 1:
        return False
    i = 2
    while i * i <= d:
        if d % (i * i) == 0:
            return False
        i += 1
    return True


def _cmp_surd(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for squarefree d > 1 (so b != 0 => irrational)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if b > 0:
        if a >= 0:
            return 1
        return 1 if b * b * d > a * a else -1
    if a <= 0:
        return -1
    return 1 if a * a > b * b * d else -1


@dataclass(frozen=True)
class QuadraticIrrational:
    """alpha = (a + b*sqrt(d)) / c, exact integer arithmetic only."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("denominator c must be nonzero")
        if self.c < 0:
            object.__setattr__(self, "a", -self.a)
            object.__setattr__(self, "b", -self.b)
            object.__setattr__(self, "c", -self.c)
        if self.b == 0:
            raise ValueError("b = 0 makes alpha rational")
        if self.d <= 1 or not _squarefree(self.d):
            raise ValueError("d must be squarefree and > 1")
        if self.floor_times(1) != 0 or _cmp_surd(self.a, self.b, self.d) <= 0:
            raise ValueError("alpha must lie in (0, 1)")

    def floor_times(self, n: int) -> int:
        """floor(n * alpha), exact."""
        an, bn = n * self.a, n * self.b
        if bn == 0:
            s = 0
        elif bn > 0:
            s = isqrt(bn * bn * self.d)
        else:
            s = -isqrt(bn * bn * self.d) - 1
        # bn*sqrt(d) is irrational for bn != 0, so an + s is the floor of
        # the numerator and dividing by c > 0 commutes with floor
        return (an + s) // self.c

    def interval_symbol(self, n: int) -> int:
        """1 iff {n*alpha} >= 1 - alpha, by exact surd comparison."""
        k = 1 + self.floor_times(n)
        return 1 if _cmp_surd(
            (n + 1) * self.a - k * self.c, (n + 1) * self.b, self.d
        ) >= 0 else 0

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt({self.d}))/{self.c}"


def _isqrt_vec(x: np.ndarray) -> np.ndarray:
    s = np.sqrt(x.astype(np.float64)).astype(np.int64)
    for _ in range(3):
        over = s * s > x
        if not over.any():
            break
        s[over] -= 1
    for _ in range(3):
        under = (s + 1) * (s + 1) <= x
        if not under.any():
            break
        s[under] += 1
    return s


def rotation_word(alpha: QuadraticIrrational, label=None, field=None):
    """a_n = floor((n+1)*alpha) - floor(n*alpha), a {0,1} word."""

    def fill(n):
        m = np.arange(n + 1, dtype=np.int64)
        bn = m * alpha.b
        x = bn * bn * alpha.d
        if x.size and int(x.max()) > (1 << 62) // alpha.d:
            floors = np.fromiter(
                (alpha.floor_times(int(i)) for i in m), np.int64, count=n + 1
            )
        else:
            s = _isqrt_vec(x)
            s = np.where(bn >= 0, s, -s - 1)
            s[bn == 0] = 0
            floors = (m * alpha.a + s) // alpha.c
        return np.diff(floors).astype(_DTYPE)

    if label is None:
        label = f"rotation:alpha=({alpha.a}+{alpha.b}*sqrt({alpha.d}))/{alpha.c}"
    return InfiniteWord(2, fill, label, field=field)


# ---------------------------------------------------------------------------
# champernowne


def champernowne_word(b: int = 10, label=None, field=None):
    """Concatenation of the base-b digit strings of 0, 1, 2, ..."""
    if b < 2:
        raise ValueError("base must be >= 2")

    def gen():
        yield 0
        m = 1
        while True:
            digits = []
            x = m
            while x:
                digits.append(x % b)
                x //= b
            yield from reversed(digits)
            m += 1

    return InfiniteWord(
        b, _fill_from_iter(gen), label or f"champernowne:b={b}", field=field
    )


# ---------------------------------------------------------------------------
# pointwise field operations


def _pointwise(a, b, spec, table, tag):
    if a.alphabet_size > spec.q or b.alphabet_size > spec.q:
        raise ValueError("symbol out of field range")

    def fill(n):
        return table[a.prefix(n), b.prefix(n)].astype(_DTYPE)

    limits = [w.limit for w in (a, b) if w.limit is not None]
    label = f"{tag}({a.label},{b.label};{spec!r})"
    return InfiniteWord(
        spec.q, fill, label, field=spec, limit=min(limits) if limits else None
    )


def word_pointwise_add(a, b, spec: FieldSpec):
    """Symbolwise a_n + b_n in F_q (symbols are canonical indices)."""
    return _pointwise(a, b, spec, spec.add_table, "sum")


def word_pointwise_mul(a, b, spec: FieldSpec):
    """Symbolwise a_n * b_n in F_q."""
    return _pointwise(a, b, spec, spec.mul_table, "hadamard")
