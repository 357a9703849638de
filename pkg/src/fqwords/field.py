"""Arithmetic in small finite fields F_q, q = p^n.

An element is encoded by its canonical index: the integer
sum(coeffs[i] * p**i) where coeffs is the little-endian coefficient
vector of its polynomial representative modulo a fixed monic
irreducible modulus of degree n over Z/p.  Equality of elements is
equality of indices.  Prime fields (n = 1) use the degenerate modulus
"t", so the index of an element is just its residue mod p.

Index arithmetic is table driven: every FieldSpec lazily builds q-by-q
numpy tables for add/mul and q-vectors for neg/inv, which lets word-
and series-level code apply field operations to whole numpy arrays of
indices by fancy indexing.  All values are immutable after
construction and safe to share between workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field",
    "field_from_modulus",
    "parse_field",
    "ff_arith",
    "ff_inv",
    "ff_embed_int",
]

# Lower coefficients (ascending, constant term first) of a monic
# irreducible modulus of degree n for each built-in non-prime order.
BUILTIN_MODULI = {
    4: (2, (1, 1)),          # t^2 + t + 1
    8: (2, (1, 1, 0)),       # t^3 + t + 1
    9: (3, (1, 0)),          # t^2 + 1
    16: (2, (1, 1, 0, 0)),   # t^4 + t + 1
    25: (5, (2, 0)),         # t^2 + 2
    27: (3, (1, 2, 0)),      # t^3 + 2t + 1
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_mul_mod(a, b, lower, p):
    # product of coefficient tuples a, b reduced by t^n = -lower
    n = len(lower)
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i, li in enumerate(lower):
                prod[k - n + i] = (prod[k - n + i] - c * li) % p
    out = prod[:n]
    out += [0] * (n - len(out))
    return tuple(out)


def _poly_divmod(num, den, p):
    # num, den ascending coefficient lists over Z/p, den nonzero
    num = list(num)
    dd = len(den) - 1
    while dd > 0 and den[dd] == 0:
        dd -= 1
    inv_lead = pow(den[dd], p - 2, p)
    quot = [0] * max(1, len(num) - dd)
    for k in range(len(num) - 1 - dd, -1, -1):
        c = (num[k + dd] * inv_lead) % p
        quot[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] = (num[k + i] - c * den[i]) % p
    return quot, num


def _is_irreducible(lower, p):
    # monic f = t^n + lower, tested by trial division against every
    # monic divisor of degree <= n/2 (n is tiny here)
    n = len(lower)
    f = list(lower) + [1]
    for deg in range(1, n // 2 + 1):
        for idx in range(p**deg):
            den = [(idx // p**i) % p for i in range(deg)] + [1]
            _, rem = _poly_divmod(f, den, p)
            if not any(rem):
                return False
    return True


class FieldSpec:
    """Immutable description of F_{p^n} plus lazily built op tables."""

    __slots__ = ("p", "n", "q", "modulus", "_tables")

    def __init__(self, p: int, modulus: tuple[int, ...]):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        n = len(modulus)
        if n < 1:
            raise ValueError("modulus must have degree >= 1")
        if any(not (0 <= c < p) for c in modulus):
            raise ValueError("modulus coefficients out of range")
        if n > 1 and not _is_irreducible(modulus, p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._tables = {}

    # -- index <-> coefficient vector ------------------------------------

    def coeffs_of(self, idx: int) -> tuple[int, ...]:
        return tuple((idx // self.p**i) % self.p for i in range(self.n))

    def index_of(self, coeffs) -> int:
        return sum(int(c) % self.p * self.p**i for i, c in enumerate(coeffs))

    # -- op tables --------------------------------------------------------

    def _digits(self):
        idx = np.arange(self.q)
        return np.stack(
            [(idx // self.p**i) % self.p for i in range(self.n)], axis=-1
        )

    def _table(self, name):
        tab = self._tables.get(name)
        if tab is not None:
            return tab
        q, p = self.q, self.p
        if name == "add":
            dx = self._digits()
            d = (dx[:, None, :] + dx[None, :, :]) % p
            tab = np.zeros((q, q), dtype=np.int16)
            for i in range(self.n):
                tab += d[:, :, i].astype(np.int16) * p**i
        elif name == "neg":
            dx = (-self._digits()) % p
            tab = np.zeros(q, dtype=np.int16)
            for i in range(self.n):
                tab += dx[:, i].astype(np.int16) * p**i
        elif name == "mul":
            tab = np.zeros((q, q), dtype=np.int16)
            coeffs = [self.coeffs_of(i) for i in range(q)]
            for x in range(q):
                for y in range(x, q):
                    v = self.index_of(
                        _poly_mul_mod(coeffs[x], coeffs[y], self.modulus, p)
                    )
                    tab[x, y] = v
                    tab[y, x] = v
        elif name == "inv":
            mul = self._table("mul")
            tab = np.zeros(q, dtype=np.int16)
            for x in range(1, q):
                tab[x] = int(np.nonzero(mul[x] == 1)[0][0])
        else:  # pragma: no cover
            raise KeyError(name)
        tab.setflags(write=False)
        self._tables[name] = tab
        return tab

    @property
    def add_table(self) -> np.ndarray:
        return self._table("add")

    @property
    def mul_table(self) -> np.ndarray:
        return self._table("mul")

    @property
    def neg_table(self) -> np.ndarray:
        return self._table("neg")

    @property
    def inv_table(self) -> np.ndarray:
        return self._table("inv")

    # -- scalar ops on indices ---------------------------------------------

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def sub(self, x: int, y: int) -> int:
        return int(self.add_table[x, self.neg_table[y]])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("division by zero")
        return int(self.inv_table[x])

    def embed_int(self, k: int) -> int:
        # residues land in the prime subfield, whose indices are 0..p-1
        return k % self.p

    def element(self, idx: int) -> "FieldElement":
        return FieldElement(self, int(idx) % self.q)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    # ------------------------------------------------------------------

    def _poly_str(self) -> str:
        terms = []
        for i in range(self.n, -1, -1):
            c = 1 if i == self.n else self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}t" if i == 1 else f"{head}t^{i}")
        return "+".join(terms)

    def __repr__(self):
        if self.n == 1:
            return f"F{self.p}"
        builtin = BUILTIN_MODULI.get(self.q)
        if builtin == (self.p, self.modulus):
            return f"F{self.q}"
        return f"Fq({self.q};{self._poly_str()})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))


@dataclass(frozen=True)
class FieldElement:
    """A field element as (spec, canonical index)."""

    spec: FieldSpec
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs_of(self.index)

    def _check(self, other):
        if self.spec != other.spec:
            raise ValueError("field mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.index, other.index))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.index, other.index))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.index, other.index))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.index))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        if self.spec.n == 1:
            return f"{self.index}"
        terms = []
        for i in range(self.spec.n - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            head = "" if (c == 1 and i > 0) else str(c)
            tail = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            sep = "*" if (head and tail and head != "") else ""
            terms.append(f"{head}{sep}{tail}" if c != 1 or i == 0 else tail)
        return "+".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    """F_q by order: prime fields directly, built-in moduli otherwise."""
    if _is_prime(q):
        return FieldSpec(q, (0,))
    if q in BUILTIN_MODULI:
        p, lower = BUILTIN_MODULI[q]
        return FieldSpec(p, lower)
    raise ValueError(
        f"no built-in modulus for order {q}; use field_from_modulus"
    )


@lru_cache(maxsize=None)
def field_from_modulus(p: int, lower: tuple[int, ...]) -> FieldSpec:
    """F_{p^n} with monic modulus t^n + sum(lower[i] t^i)."""
    return FieldSpec(p, lower)


def _parse_poly(text: str, var: str) -> dict[int, int]:
    """Parse '2*t^3+t+1' into {degree: integer coefficient}.

    Coefficients are plain integers (reduction happens at the call
    site); supports +/- signs, optional '*', and bare constants.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    term_re = re.compile(
        rf"([+-]?)(\d+)?(?:\*?{re.escape(var)}(?:\^(\d+))?)?"
    )
    pos = 0
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial {text!r} at position {pos}")
        sign, num, exp = m.groups()
        has_var = s[m.start() : m.end()].rstrip("0123456789^").endswith(var)
        if num is None and not has_var:
            raise ValueError(f"bad polynomial {text!r} at position {pos}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        d = (int(exp) if exp is not None else 1) if has_var else 0
        coeffs[d] = coeffs.get(d, 0) + c
        pos = m.end()
    return coeffs


def parse_field(text: str) -> FieldSpec:
    """Parse a field literal: 'F3', 'F9', or 'Fq(9;t^2+1)'."""
    s = text.strip()
    m = re.fullmatch(r"F(\d+)", s)
    if m:
        return field(int(m.group(1)))
    m = re.fullmatch(r"Fq\((\d+);([^)]+)\)", s)
    if m:
        q = int(m.group(1))
        poly = _parse_poly(m.group(2), "t")
        n = max(poly)
        p = None
        for cand in range(2, q + 1):
            if _is_prime(cand) and cand**n == q:
                p = cand
                break
        if p is None:
            raise ValueError(f"order {q} is not a prime power of degree {n}")
        if poly.get(n, 0) % p != 1:
            raise ValueError("modulus must be monic")
        lower = tuple(poly.get(i, 0) % p for i in range(n))
        return field_from_modulus(p, lower)
    raise ValueError(f"bad field literal {text!r}")


def ff_arith(op: str, x: FieldElement, y: FieldElement) -> FieldElement:
    """Field arithmetic dispatch: op in {'add', 'sub', 'mul'}."""
    if x.spec != y.spec:
        raise ValueError("field mismatch")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def ff_inv(x: FieldElement) -> FieldElement:
    if x.index == 0:
        raise ZeroDivisionError("division by zero")
    return x.inverse()


def ff_embed_int(k: int, spec: FieldSpec) -> FieldElement:
    """Embed an integer via k mod p into the prime subfield."""
    return FieldElement(spec, spec.embed_int(k))
