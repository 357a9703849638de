"""Laurent series over F_q and their operation algebra.

A series f = sum_{n >= -n0} a_n T^{-n} is stored as a finite principal
part (canonical indices for exponents T^{n0} ... T^1, i.e. sequence
indices -n0 ... -1) plus an InfiniteWord holding the tail (a_n)_{n>=0}.
All operations work index-wise on that encoding:

* add / hadamard are pointwise table lookups on aligned coefficients,
* polynomial multiplication is the one-sided window convolution
  c_j = sum_k b_k a_{j+k},
* rational multiplication multiplies by the numerator and then long-
  divides the coefficient stream by the denominator, each output
  coefficient coming from a linear recurrence of order deg Q,
* the Cauchy product materializes both factors out to an explicit
  horizon N and convolves exactly (integer convolutions per digit
  plane plus modulus reduction for extension fields); the result
  refuses reads past N instead of returning garbage,
* derivative, Cartier section, and power substitution are index
  reshufflings with scalar factors.

Every operation propagates validity horizons from its inputs, so a
series derived from a horizon-bounded product inherits the largest
prefix that is still exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numba import njit

from .convolve import exact_convolve
from .field import FieldElement, FieldSpec
from .words import (
    _DTYPE,
    InfiniteWord,
    periodic_word,
    word_pointwise_add,
    word_pointwise_mul,
)

__all__ = [
    "LaurentSeries",
    "RationalFunction",
    "series_from_word",
    "poly_series",
    "constant_series",
    "zero_series",
    "monomial_series",
    "ls_coefficient",
    "ls_add",
    "ls_negate",
    "ls_shift",
    "ls_mul_poly",
    "ls_mul_rational",
    "ls_cauchy_mul",
    "ls_hadamard",
    "ls_derivative",
    "ls_cartier",
    "ls_substitute_power",
    "ls_equal_up_to",
    "derivative_factor_word",
]

# State-space guard for rational expansion periodicity extraction.
MAX_PERIOD_STATES = 2_000_000


def _format_poly(coeffs) -> str:
    """Render an ascending coefficient list as a T-polynomial string."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[k])
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            terms.append(f"{head}T" if k == 1 else f"{head}T^{k}")
    return "+".join(terms) if terms else "0"


def _strip_poly(coeffs, spec: FieldSpec) -> list[int]:
    """Validate canonical indices and drop trailing zero coefficients."""
    out = [int(c) for c in coeffs]
    if any(not 0 <= c < spec.q for c in out):
        raise ValueError("polynomial coefficient out of field range")
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class LaurentSeries:
    """sum_{n >= -n0} a_n T^{-n} with canonical-index coefficients."""

    spec: FieldSpec
    n0: int
    principal: tuple[int, ...]
    tail: InfiniteWord

    def __post_init__(self):
        if self.n0 < 0 or len(self.principal) != self.n0:
            raise ValueError("principal part does not match depth n0")
        if any(not 0 <= int(c) < self.spec.q for c in self.principal):
            raise ValueError("principal coefficient out of field range")
        if self.tail.alphabet_size > self.spec.q:
            raise ValueError("symbol out of field range")
        if self.tail.field is not None and self.tail.field != self.spec:
            raise ValueError("field mismatch")

    # -- coefficient access -------------------------------------------------

    def coefficient(self, n: int) -> FieldElement:
        """a_n as a field element; n counts T^{-n}, so n = -1 is T^1."""
        return self.spec.element(self.coefficient_index(n))

    def coefficient_index(self, n: int) -> int:
        if n < -self.n0:
            raise ValueError("below principal part")
        if n < 0:
            return int(self.principal[n + self.n0])
        return self.tail.symbol_at(n)

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Indices of a_lo .. a_{hi-1}, zero-extended below the depth."""
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        a, b = max(lo, -self.n0), min(hi, 0)
        if a < b:
            seg = self.principal[a + self.n0 : b + self.n0]
            out[a - lo : b - lo] = seg
        if hi > 0:
            t = max(lo, 0)
            out[t - lo :] = self.tail.prefix(hi)[t:]
        return out

    @property
    def label(self) -> str:
        return self.tail.label

    @property
    def limit(self):
        """Largest exact tail prefix length, or None if unbounded."""
        return self.tail.limit

    def __repr__(self):
        return f"LaurentSeries({self.label}, n0={self.n0}, {self.spec!r})"


# ---------------------------------------------------------------------------
# constructors


def series_from_word(word: InfiniteWord, spec: FieldSpec,
                     principal=()) -> LaurentSeries:
    """Promote a coefficient word to sum a_n T^{-n}.

    Symbols are read as canonical field indices; an alphabet of size
    <= p always denotes prime-subfield constants, so 0/1/2-valued words
    mean the same elements in every field of that characteristic.
    """
    if word.alphabet_size > spec.q:
        raise ValueError("symbol out of field range")
    return LaurentSeries(spec, len(principal),
                         tuple(int(c) for c in principal), word)


def _finite_tail(values, spec: FieldSpec, label: str) -> InfiniteWord:
    """An eventually-zero word: the given values, then zeros forever."""
    arr = np.asarray(values, dtype=_DTYPE)

    def fill(n):
        out = np.zeros(n, dtype=_DTYPE)
        out[: min(n, arr.size)] = arr[:n]
        return out

    return InfiniteWord(spec.q, fill, label, field=spec)


def poly_series(coeffs, spec: FieldSpec) -> LaurentSeries:
    """The series of the polynomial sum_k coeffs[k] T^k (indices given).

    T^k contributes at sequence index -k, so the whole polynomial sits
    in the principal part except for its constant term.
    """
    c = _strip_poly(coeffs, spec)
    label = f"poly:{_format_poly(c)}"
    if not c:
        return LaurentSeries(spec, 0, (), _finite_tail([], spec, "poly:0"))
    d = len(c) - 1
    principal = tuple(c[d - i] for i in range(d))  # indices -d .. -1
    return LaurentSeries(spec, d, principal, _finite_tail(c[:1], spec, label))


def constant_series(c: int, spec: FieldSpec) -> LaurentSeries:
    return poly_series([c], spec)


def zero_series(spec: FieldSpec) -> LaurentSeries:
    return poly_series([], spec)


def monomial_series(spec: FieldSpec, e: int) -> LaurentSeries:
    """T^e for any integer e (negative e lives in the tail)."""
    if e >= 0:
        return poly_series([0] * e + [1], spec)
    vals = np.zeros(-e + 1, dtype=_DTYPE)
    vals[-e] = 1
    return LaurentSeries(spec, 0, (),
                         _finite_tail(vals, spec, f"poly:T^{e}"))


# ---------------------------------------------------------------------------
# pointwise operations


def ls_coefficient(f: LaurentSeries, n: int) -> FieldElement:
    return f.coefficient(n)


def _check_specs(f: LaurentSeries, g: LaurentSeries):
    if f.spec != g.spec:
        raise ValueError("field mismatch")


def ls_add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Termwise sum; the depth is the max of the two depths."""
    _check_specs(f, g)
    spec = f.spec
    n0 = max(f.n0, g.n0)
    fp = f.window(-n0, 0)
    gp = g.window(-n0, 0)
    principal = tuple(spec.add(int(a), int(b)) for a, b in zip(fp, gp))
    return LaurentSeries(spec, n0, principal,
                         word_pointwise_add(f.tail, g.tail, spec))


def _map_tail(word: InfiniteWord, row: np.ndarray, label: str,
              spec: FieldSpec) -> InfiniteWord:
    def fill(n):
        return row[word.prefix(n)].astype(_DTYPE)

    return InfiniteWord(spec.q, fill, label, field=spec, limit=word.limit)


def ls_negate(f: LaurentSeries) -> LaurentSeries:
    spec = f.spec
    principal = tuple(spec.neg(int(c)) for c in f.principal)
    tail = _map_tail(f.tail, spec.neg_table, f"neg({f.label})", spec)
    return LaurentSeries(spec, f.n0, principal, tail)


def _scale(c: int, f: LaurentSeries, label: str) -> LaurentSeries:
    spec = f.spec
    row = spec.mul_table[c]
    principal = tuple(int(row[int(v)]) for v in f.principal)
    return LaurentSeries(spec, f.n0, principal,
                         _map_tail(f.tail, row, label, spec))


def ls_hadamard(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Termwise product; starts at the shallower of the two depths."""
    _check_specs(f, g)
    spec = f.spec
    n0 = min(f.n0, g.n0)
    fp = f.window(-n0, 0)
    gp = g.window(-n0, 0)
    principal = tuple(spec.mul(int(a), int(b)) for a, b in zip(fp, gp))
    return LaurentSeries(spec, n0, principal,
                         word_pointwise_mul(f.tail, g.tail, spec))


# ---------------------------------------------------------------------------
# shifts and polynomial multiplication


def _limit_minus(limit, d: int):
    if limit is None:
        return None
    return max(limit - d, 0)


def ls_shift(f: LaurentSeries, k: int) -> LaurentSeries:
    """Multiply by T^k: coefficient m of the result is a_{m+k}."""
    spec = f.spec
    if k == 0:
        return f
    label = f"shift({f.label};k={k})"
    if k > 0:
        n0 = f.n0 + k
        moved = [int(v) for v in f.tail.prefix(k)]
        principal = f.principal + tuple(moved)

        def fill(n):
            return f.tail.prefix(n + k)[k:]

        tail = InfiniteWord(spec.q, fill, label, field=spec,
                            limit=_limit_minus(f.tail.limit, k))
        return LaurentSeries(spec, n0, principal, tail)
    j = -k
    n0 = max(f.n0 - j, 0)
    principal = f.principal[: n0]
    pre = np.zeros(j, dtype=_DTYPE)
    drop = min(j, f.n0)
    if drop:
        pre[j - drop :] = f.principal[f.n0 - drop :]

    def fill(n):
        if n <= j:
            return pre[:n]
        return np.concatenate([pre, f.tail.prefix(n - j)])

    tail = InfiniteWord(
        spec.q, fill, label, field=spec,
        limit=None if f.tail.limit is None else f.tail.limit + j,
    )
    return LaurentSeries(spec, n0, principal, tail)


def ls_mul_poly(b, f: LaurentSeries) -> LaurentSeries:
    """Multiply by the polynomial b (ascending canonical indices).

    c_j = sum_k b_k a_{j+k}; a zero polynomial yields the zero series.
    """
    spec = f.spec
    bb = _strip_poly(b, spec)
    if not bb:
        return zero_series(spec)
    d = len(bb) - 1
    n0 = f.n0 + d
    addt, mult = spec.add_table, spec.mul_table

    src = f.window(-f.n0, d)  # a_{-n0} .. a_{d-1} covers all principal sums
    principal = []
    for m in range(-n0, 0):
        acc = 0
        for k, bk in enumerate(bb):
            if bk and m + k >= -f.n0:
                acc = spec.add(acc, spec.mul(bk, int(src[m + k + f.n0])))
        principal.append(acc)

    label = f"mulpoly({_format_poly(bb)},{f.label})"

    def fill(n):
        arr = f.tail.prefix(n + d)
        acc = mult[bb[0], arr[:n]]
        for k in range(1, d + 1):
            if bb[k]:
                acc = addt[acc, mult[bb[k], arr[k : k + n]]]
        return acc.astype(_DTYPE)

    tail = InfiniteWord(spec.q, fill, label, field=spec,
                        limit=_limit_minus(f.tail.limit, d))
    return LaurentSeries(spec, n0, tuple(principal), tail)


# ---------------------------------------------------------------------------
# rational multiplication: numerator, then stream long division


@njit(cache=True)
def _div_kernel(hvec, qlow, inv_qs, addt, mult, negt, gp, s):
    # gp[s + t] = quotient coefficient aligned with hvec[t]; the first s
    # entries of gp are zero padding standing for coefficients above the
    # quotient's support.
    for t in range(hvec.shape[0]):
        acc = hvec[t]
        for k in range(s):
            acc = addt[acc, negt[mult[qlow[k], gp[t + k]]]]
        gp[s + t] = mult[inv_qs, acc]


def _divide_stream(h: LaurentSeries, den: list[int]) -> LaurentSeries:
    """h / den via the order-s recurrence solved top exponent first.

    Matching coefficients in den * g = h at sequence index j gives
    h_j = sum_k q_k g_{j+k}; solving for the newest unknown,
    g_i = q_s^{-1} (h_{i-s} - sum_{k<s} q_k g_{i-s+k}).
    """
    spec = h.spec
    s = len(den) - 1
    inv_qs = spec.inv(den[s])
    label = f"divpoly({_format_poly(den)},{h.label})"
    if s == 0:
        return _scale(inv_qs, h, label)
    n0 = max(h.n0 - s, 0)
    qlow = np.asarray(den[:s], dtype=np.int64)
    addt = spec.add_table.astype(np.int64)
    mult = spec.mul_table.astype(np.int64)
    negt = spec.neg_table.astype(np.int64)

    def solve(n):
        # quotient over indices -n0 .. n-1 needs h over -n0-s .. n-s-1
        total = n0 + n
        lo = -n0 - s
        hvec = np.zeros(total, dtype=np.int64)
        a, b = max(lo, -h.n0), min(lo + total, 0)
        if a < b:
            hvec[a - lo : b - lo] = h.principal[a + h.n0 : b + h.n0]
        if n > s:
            hvec[-lo :] = h.tail.prefix(n - s)
        gp = np.zeros(total + s, dtype=np.int64)
        _div_kernel(hvec, qlow, inv_qs, addt, mult, negt, gp, s)
        return gp

    principal = tuple(int(v) for v in solve(0)[s:]) if n0 else ()

    def fill(n):
        return solve(n)[s + n0 :].astype(_DTYPE)

    tail = InfiniteWord(
        spec.q, fill, label, field=spec,
        limit=None if h.tail.limit is None else h.tail.limit + s,
    )
    return LaurentSeries(spec, n0, principal, tail)


@dataclass(frozen=True)
class RationalFunction:
    """P/Q with ascending canonical-index coefficient tuples."""

    spec: FieldSpec
    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(int(c) for c in self.num))
        object.__setattr__(self, "den", tuple(int(c) for c in self.den))
        for c in self.num + self.den:
            if not 0 <= c < self.spec.q:
                raise ValueError("polynomial coefficient out of field range")
        if not any(self.den):
            raise ValueError("zero denominator")

    def expansion(self) -> LaurentSeries:
        """P/Q itself as a Laurent series (divide the numerator)."""
        return ls_mul_rational(self, constant_series(1, self.spec))

    @cached_property
    def periodicity(self) -> tuple[int, int]:
        """(S, L): the expansion's tail is L-periodic from index S.

        Once the numerator stops feeding the division recurrence, the
        s-tuple of latest quotient coefficients walks a deterministic
        orbit in a q^s state space, so the tail cycles; the first
        repeated state gives a period, which is then minimized over
        divisors and the preperiod shrunk (floored at 1).
        """
        spec = self.spec
        s = len(_strip_poly(self.den, spec)) - 1
        if s == 0:
            return (1, 1)
        if spec.q**s > MAX_PERIOD_STATES:
            raise ValueError("denominator degree too large to scan periods")
        exp = self.expansion()
        w = exp.tail.prefix(2 * s + spec.q**s + 4)
        seen: dict[tuple, int] = {}
        i1 = i2 = -1
        for i in range(s + 1, w.size + 1):
            state = tuple(int(v) for v in w[i - s : i])
            if state in seen:
                i1, i2 = seen[state], i
                break
            seen[state] = i
        s0, l0 = max(i1 - s, 0), i2 - i1
        w = exp.tail.recompute_prefix(max(w.size, s0 + 2 * l0 + 1))
        period = l0
        for d in range(1, l0 + 1):
            if l0 % d == 0 and np.array_equal(
                w[s0 : s0 + l0], w[s0 + d : s0 + d + l0]
            ):
                period = d
                break
        pre = s0
        while pre > 0 and w[pre - 1 + period] == w[pre - 1]:
            pre -= 1
        return (max(pre, 1), period)

    @property
    def S(self) -> int:
        return self.periodicity[0]

    @property
    def L(self) -> int:
        return self.periodicity[1]

    def __repr__(self):
        return f"({_format_poly(self.num)})/({_format_poly(self.den)})"


def ls_mul_rational(r: RationalFunction, f: LaurentSeries) -> LaurentSeries:
    """Exact r*f: multiply by the numerator, long-divide the stream."""
    if r.spec != f.spec:
        raise ValueError("field mismatch")
    den = _strip_poly(r.den, f.spec)
    h = ls_mul_poly(r.num, f)
    out = _divide_stream(h, den)
    label = f"mulrat({_format_poly(r.num)}/{_format_poly(den)},{f.label})"
    tail = InfiniteWord(f.spec.q, out.tail.prefix, label, field=f.spec,
                        limit=out.tail.limit)
    return LaurentSeries(f.spec, out.n0, out.principal, tail)


# ---------------------------------------------------------------------------
# Cauchy product


def _field_convolve(avec: np.ndarray, bvec: np.ndarray,
                    spec: FieldSpec) -> np.ndarray:
    """Full convolution of canonical-index vectors, exact in F_q.

    Prime fields convolve residues directly; extension fields convolve
    each pair of digit planes over Z, regroup by t-degree, and reduce
    t^d through the modulus before reassembling indices.
    """
    p, deg = spec.p, spec.n
    if deg == 1:
        return exact_convolve(avec, bvec) % p
    planes_a = [(avec // p**u) % p for u in range(deg)]
    planes_b = [(bvec // p**v) % p for v in range(deg)]
    m = avec.size + bvec.size - 1
    comp = np.zeros((2 * deg - 1, m), dtype=np.int64)
    for u in range(deg):
        for v in range(deg):
            comp[u + v] += exact_convolve(planes_a[u], planes_b[v])
    # digits of t^d modulo the field modulus, d = 0 .. 2*deg-2
    red = np.zeros((2 * deg - 1, deg), dtype=np.int64)
    cur = [1] + [0] * (deg - 1)
    for d in range(2 * deg - 1):
        red[d] = cur
        carry = cur[deg - 1]
        cur = [0] + cur[: deg - 1]
        if carry:
            cur = [(cv - carry * mv) % p for cv, mv in zip(cur, spec.modulus)]
    out = np.zeros(m, dtype=np.int64)
    for w in range(deg):
        digit = (comp * red[:, w : w + 1]).sum(axis=0) % p
        out += digit * p**w
    return out


def ls_cauchy_mul(f: LaurentSeries, g: LaurentSeries, N: int) -> LaurentSeries:
    """Exact product coefficients c_n = sum a_i b_{n-i} for all n <= N."""
    _check_specs(f, g)
    if N < 0:
        raise ValueError("horizon must be nonnegative")
    spec = f.spec
    avec = f.window(-f.n0, N + g.n0 + 1)
    bvec = g.window(-g.n0, N + f.n0 + 1)
    conv = _field_convolve(avec, bvec, spec)
    n0 = f.n0 + g.n0
    principal = tuple(int(v) for v in conv[:n0])
    buf = conv[n0 : n0 + N + 1].astype(_DTYPE)
    label = f"cauchy({f.label},{g.label};N={N})"
    tail = InfiniteWord(
        spec.q, lambda n: buf[:n], label, field=spec,
        limit=N + 1, limit_msg=f"beyond validity horizon (N={N})",
    )
    return LaurentSeries(spec, n0, principal, tail)


# ---------------------------------------------------------------------------
# derivative, Cartier section, power substitution


def derivative_factor_word(spec: FieldSpec, k: int = 1) -> InfiniteWord:
    """The period-p word b_n = (-n)(-n-1)...(-n-k+1) mod p."""
    p = spec.p
    vals = np.ones(p, dtype=np.int64)
    n = np.arange(p, dtype=np.int64)
    for i in range(k):
        vals = vals * ((-(n + i)) % p) % p
    return periodic_word([], vals.astype(_DTYPE),
                         label=f"dfactor:p={p},k={k}", field=spec)


def ls_derivative(f: LaurentSeries, k: int = 1) -> LaurentSeries:
    """k-fold d/dT: a_n T^{-n} picks up (-n)(-n-1)...(-n-k+1) at T^{-n-k}."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k == 0:
        return f
    spec = f.spec
    p = spec.p
    mult = spec.mul_table
    n0 = max(f.n0 - k, 0)

    def factor(ms):
        w = np.ones_like(ms)
        for i in range(k):
            w = w * ((-(ms - k + i)) % p) % p
        return w

    principal = []
    for m in range(-n0, 0):
        w = int(factor(np.asarray([m], dtype=np.int64))[0])
        principal.append(spec.mul(w, f.coefficient_index(m - k)))

    label = f"d({f.label};k={k})"

    def fill(n):
        ms = np.arange(n, dtype=np.int64)
        src = np.zeros(n, dtype=_DTYPE)
        head = min(k, n)
        for m in range(head):  # sources still inside the principal part
            if m - k >= -f.n0:
                src[m] = f.principal[m - k + f.n0]
        if n > k:
            src[k:] = f.tail.prefix(n - k)
        return mult[factor(ms), src].astype(_DTYPE)

    tail = InfiniteWord(
        spec.q, fill, label, field=spec,
        limit=None if f.tail.limit is None else f.tail.limit + k,
    )
    return LaurentSeries(spec, n0, tuple(principal), tail)


def _require_power_series(f: LaurentSeries):
    if any(f.principal):
        raise ValueError("nonzero principal part")


def ls_cartier(f: LaurentSeries, r: int) -> LaurentSeries:
    """The section picking out a_{q i + r}: coefficient i of the result."""
    spec = f.spec
    q = spec.q
    if not 0 <= r < q:
        raise ValueError("r out of range")
    _require_power_series(f)
    label = f"cartier({f.label};r={r})"

    def fill(n):
        return f.tail.prefix((n - 1) * q + r + 1)[r::q][:n]

    lim = f.tail.limit
    limit = None if lim is None else (
        (lim - 1 - r) // q + 1 if lim > r else 0
    )
    tail = InfiniteWord(spec.q, fill, label, field=spec, limit=limit)
    return LaurentSeries(spec, 0, (), tail)


def ls_substitute_power(f: LaurentSeries, k: int) -> LaurentSeries:
    """f(T^k): coefficient n of the result is a_{n/k} if k | n, else 0."""
    if k < 1:
        raise ValueError("power must be positive")
    _require_power_series(f)
    spec = f.spec
    label = f"subst({f.label};k={k})"

    def fill(n):
        out = np.zeros(n, dtype=_DTYPE)
        cnt = (n + k - 1) // k
        out[::k] = f.tail.prefix(cnt)[:cnt]
        return out

    lim = f.tail.limit
    tail = InfiniteWord(spec.q, fill, label, field=spec,
                        limit=None if lim is None else k * lim)
    return LaurentSeries(spec, 0, (), tail)


# ---------------------------------------------------------------------------
# comparison


def ls_equal_up_to(f: LaurentSeries, g: LaurentSeries, N: int) -> bool:
    """True iff every coefficient agrees for -max(n0) <= n <= N."""
    _check_specs(f, g)
    lo = -max(f.n0, g.n0)
    return bool(np.array_equal(f.window(lo, N + 1), g.window(lo, N + 1)))
