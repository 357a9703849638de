"""Text specs for words and series: parsing, canonical forms, builders.

Word specs name a generator and its parameters, e.g. ``carlitz:q=3``,
``rotation:alpha=(0+1*sqrt(2))/1``, ``morphic:0->01,1->0;seed=0``.  Two
wrapper forms combine words coefficient-wise over a named field —
``sum(A,B;F3)`` and ``hadamard(A,B;F3)`` — and ``over(A;F3)`` tags a
bare word with a field without changing its symbols.  Parsing returns
a SequenceSpec holding the raw text, a canonical re-rendering (parsing
the canonical form reproduces it verbatim), and the built word.

Series expressions apply one operation to word specs promoted to power
series: ``add(A,B)``, ``mulpoly(P,A)``, ``mulrat(P/Q,A)``,
``cauchy(A,B;N=..)``, ``hadamard(A,B)``, ``d(A;k=1)``,
``cartier(A;r=0)``, ``subst(A;k=3)``, with P, Q polynomial literals in
T.  Promotion uses the word's field tag; untagged words must be
wrapped in ``over``.

All syntax errors carry the offending position in the original text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .carlitz import pi_word, pq_word
from .field import FieldSpec, _parse_poly, field, parse_field
from .lacunary import (
    DEPairSpec,
    de_word_b,
    de_word_c,
    lacunary_word,
    r2_bulk,
    theta_word,
)
from .laurent import (
    LaurentSeries,
    RationalFunction,
    ls_add,
    ls_cartier,
    ls_cauchy_mul,
    ls_derivative,
    ls_hadamard,
    ls_mul_poly,
    ls_mul_rational,
    ls_substitute_power,
    series_from_word,
)
from .words import (
    _DTYPE,
    InfiniteWord,
    Morphism,
    QuadraticIrrational,
    cantor_word,
    champernowne_word,
    automatic_word,
    load_dfao,
    morphic_fixed_point,
    periodic_word,
    rotation_word,
    word_pointwise_add,
    word_pointwise_mul,
)

__all__ = [
    "SpecError",
    "SequenceSpec",
    "SeriesSpec",
    "parse_sequence_spec",
    "parse_series_expr",
    "spec_to_series",
]


class SpecError(ValueError):
    """Malformed spec text; the message names the failing position."""

    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class SequenceSpec:
    """A parsed word spec: raw text, constructor tree, canonical form."""

    raw: str
    node: tuple
    canonical: str
    word: InfiniteWord


@dataclass(frozen=True)
class SeriesSpec:
    """A parsed series expression; build() evaluates it to a series."""

    raw: str
    canonical: str
    builder: Callable

    def build(self, default_horizon: int | None = None) -> LaurentSeries:
        return self.builder(default_horizon)


# ---------------------------------------------------------------------------
# low-level text helpers


def _strip(s: str, base: int) -> tuple[str, int]:
    lead = len(s) - len(s.lstrip())
    return s.strip(), base + lead


def _split_top(s: str, seps: str) -> list[tuple[str, int]]:
    """Split at depth-0 separator chars, returning (piece, offset) pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in seps:
            out.append((s[start:i], start))
            start = i + 1
    out.append((s[start:], start))
    return out


def _parse_kv(params: str, pos: int, schema: dict) -> dict:
    """Parse 'k=v' segments split on ';' or ',' against a schema.

    schema maps key -> (converter, default); defaults fill omitted keys
    and a None default marks the key as required.
    """
    values = {}
    if params:
        for seg, off in _split_top(params, ";,"):
            seg_s, seg_pos = _strip(seg, pos + off)
            m = re.fullmatch(r"([A-Za-z_]+)=(.*)", seg_s, re.S)
            if not m:
                raise SpecError(f"expected key=value, got {seg_s!r}", seg_pos)
            key, val = m.group(1), m.group(2)
            if key not in schema:
                raise SpecError(f"unknown parameter {key!r}", seg_pos)
            if key in values:
                raise SpecError(f"duplicate parameter {key!r}", seg_pos)
            conv = schema[key][0]
            try:
                values[key] = conv(val)
            except SpecError:
                raise
            except (ValueError, TypeError):
                raise SpecError(f"bad value for {key!r}: {val!r}",
                                seg_pos) from None
    for key, (_, default) in schema.items():
        if key not in values:
            if default is None:
                raise SpecError(f"missing parameter {key!r}", pos)
            values[key] = default
    return values


def _pos_int(lo: int) -> Callable[[str], int]:
    def conv(s):
        v = int(s)
        if v < lo:
            raise ValueError
        return v

    return conv


# ---------------------------------------------------------------------------
# atom builders: each returns (node, canonical, word)


def _atom_periodic(params, pos):
    m = re.fullmatch(r"(\d*)\|(\d+)", params or "")
    if not m:
        raise SpecError("expected periodic:<digits>|<digits>", pos)
    pre = [int(ch) for ch in m.group(1)]
    per = [int(ch) for ch in m.group(2)]
    canonical = f"periodic:{m.group(1)}|{m.group(2)}"
    return (("periodic", tuple(pre), tuple(per)), canonical,
            periodic_word(pre, per, label=canonical))


def _atom_morphic(params, pos):
    if not params:
        raise SpecError("expected morphic:<rules>;seed=<k>", pos)
    segs = _split_top(params, ";")
    rules: dict[int, tuple[int, ...]] = {}
    rules_txt, rules_pos = _strip(segs[0][0], pos + segs[0][1])
    for item, off in _split_top(rules_txt, ","):
        item_s, item_pos = _strip(item, rules_pos + off)
        m = re.fullmatch(r"(\d)->(\d+)", item_s)
        if not m:
            raise SpecError(f"bad morphism rule {item_s!r}", item_pos)
        letter = int(m.group(1))
        if letter in rules:
            raise SpecError(f"duplicate rule for letter {letter}", item_pos)
        rules[letter] = tuple(int(ch) for ch in m.group(2))
    k = 1 + max(max(rules), max(x for img in rules.values() for x in img))
    for letter in range(k):
        if letter not in rules:
            raise SpecError(f"missing image for letter {letter}", rules_pos)
    tail = ";".join(seg for seg, _ in segs[1:])
    kv = _parse_kv(tail, pos + (segs[1][1] if len(segs) > 1 else 0),
                   {"seed": (_pos_int(0), 0)})
    seed = kv["seed"]
    rules_str = ",".join(
        f"{x}->{''.join(map(str, rules[x]))}" for x in range(k)
    )
    canonical = f"morphic:{rules_str};seed={seed}"
    try:
        sigma = Morphism(tuple(rules[x] for x in range(k)))
        word = morphic_fixed_point(sigma, seed, label=canonical)
    except ValueError as e:
        raise SpecError(str(e), pos) from None
    return (("morphic", sigma.images, seed), canonical, word)


def _atom_dfao(params, pos):
    kv = _parse_kv(params or "", pos, {"file": (str, None)})
    path = kv["file"]
    try:
        text = Path(path).read_text()
    except OSError:
        raise SpecError(f"cannot read dfao file {path!r}", pos) from None
    canonical = f"dfao:file={path}"
    return (("dfao", path), canonical,
            automatic_word(load_dfao(text), label=canonical))


def _atom_rotation(params, pos):
    m = re.fullmatch(
        r"alpha=\((-?\d+)([+-]\d+)\*sqrt\((\d+)\)\)/(-?\d+)", params or ""
    )
    if not m:
        raise SpecError("expected rotation:alpha=(a+b*sqrt(d))/c", pos)
    a, b, d, c = (int(m.group(i)) for i in (1, 2, 3, 4))
    try:
        alpha = QuadraticIrrational(a, b, c, d)
    except ValueError as e:
        raise SpecError(str(e), pos) from None
    canonical = (
        f"rotation:alpha=({alpha.a}{alpha.b:+d}*sqrt({alpha.d}))/{alpha.c}"
    )
    return (("rotation", alpha.a, alpha.b, alpha.c, alpha.d), canonical,
            rotation_word(alpha, label=canonical))


def _atom_cantor(params, pos):
    if params is not None:
        raise SpecError("cantor takes no parameters", pos)
    return (("cantor",), "cantor", cantor_word())


def _atom_champernowne(params, pos):
    kv = _parse_kv(params or "", pos, {"b": (_pos_int(2), 10)})
    b = kv["b"]
    canonical = f"champernowne:b={b}"
    return (("champernowne", b), canonical,
            champernowne_word(b, label=canonical))


def _atom_carlitz(params, pos):
    kv = _parse_kv(params or "", pos,
                   {"q": (_pos_int(2), None), "engine": (str, "blocks")})
    q, engine = kv["q"], kv["engine"]
    if engine not in ("blocks", "definition"):
        raise SpecError(f"unknown engine {engine!r}", pos)
    suffix = "" if engine == "blocks" else f";engine={engine}"
    canonical = f"carlitz:q={q}{suffix}"
    try:
        word = pq_word(q, engine=engine)
    except ValueError as e:
        raise SpecError(str(e), pos) from None
    return (("carlitz", q, engine), canonical, word)


def _atom_pi(params, pos):
    kv = _parse_kv(params or "", pos, {"q": (_pos_int(2), None)})
    q = kv["q"]
    try:
        word = pi_word(q)
    except ValueError as e:
        raise SpecError(str(e), pos) from None
    return (("pi", q), f"pi:q={q}", word)


def _atom_lac(params, pos):
    kv = _parse_kv(params or "", pos, {"d": (_pos_int(2), None)})
    d = kv["d"]
    return (("lac", d), f"lac:d={d}", lacunary_word(d))


def _de_pair(params, pos):
    kv = _parse_kv(params or "", pos,
                   {"d": (_pos_int(2), 2), "e": (_pos_int(2), 3)})
    try:
        return DEPairSpec(kv["d"], kv["e"])
    except ValueError as e:
        raise SpecError(str(e), pos) from None


def _atom_deb(params, pos):
    pair = _de_pair(params, pos)
    canonical = f"deb:d={pair.d},e={pair.e}"
    return (("deb", pair.d, pair.e), canonical, de_word_b(pair))


def _atom_dec(params, pos):
    pair = _de_pair(params, pos)
    canonical = f"dec:d={pair.d},e={pair.e}"
    return (("dec", pair.d, pair.e), canonical, de_word_c(pair))


def _atom_theta(params, pos):
    kv = _parse_kv(params or "", pos, {"q": (_pos_int(2), 3)})
    q = kv["q"]
    try:
        word = theta_word(field(q))
    except ValueError as e:
        raise SpecError(str(e), pos) from None
    canonical = "theta" if q == 3 else f"theta:q={q}"
    return (("theta", q), canonical, word)


def _atom_r2(params, pos):
    kv = _parse_kv(
        params or "", pos,
        {"n": (_pos_int(0), 0), "mode": (str, "formula"),
         "q": (_pos_int(2), 3)},
    )
    start, mode, q = kv["n"], kv["mode"], kv["q"]
    if mode not in ("formula", "bruteforce"):
        raise SpecError(f"unknown mode {mode!r}", pos)
    spec = field(q)
    parts = []
    if start:
        parts.append(f"n={start}")
    if mode != "formula":
        parts.append(f"mode={mode}")
    if q != 3:
        parts.append(f"q={q}")
    canonical = "r2" + (":" + ";".join(parts) if parts else "")

    def fill(n):
        vals = r2_bulk(start + n - 1, mode)[start:] % spec.p
        return vals.astype(_DTYPE)

    word = InfiniteWord(spec.p, fill, canonical, field=spec)
    return (("r2", start, mode, q), canonical, word)


_ATOMS = {
    "periodic": _atom_periodic,
    "morphic": _atom_morphic,
    "dfao": _atom_dfao,
    "rotation": _atom_rotation,
    "cantor": _atom_cantor,
    "champernowne": _atom_champernowne,
    "carlitz": _atom_carlitz,
    "pi": _atom_pi,
    "lac": _atom_lac,
    "deb": _atom_deb,
    "dec": _atom_dec,
    "theta": _atom_theta,
    "r2": _atom_r2,
}


# ---------------------------------------------------------------------------
# spec parser


def _parse_field_at(text: str, pos: int) -> FieldSpec:
    try:
        return parse_field(text)
    except ValueError as e:
        raise SpecError(str(e), pos) from None


def _check_operand_field(child, spec, pos):
    if child.word.field is not None and child.word.field != spec:
        raise SpecError(
            f"field mismatch: {child.canonical} is tagged {child.word.field!r}",
            pos,
        )


def _parse_spec(text: str, base: int) -> SequenceSpec:
    s, base = _strip(text, base)
    if not s:
        raise SpecError("empty spec", base)
    m = re.match(r"(sum|hadamard|over)\(", s)
    if m:
        name = m.group(1)
        if not s.endswith(")"):
            raise SpecError("expected ')'", base + len(s))
        inner = s[len(name) + 1 : -1]
        inner_base = base + len(name) + 1
        segs = _split_top(inner, ";")
        head, tail = segs[0], segs[1:]
        if len(tail) > 1:
            raise SpecError("too many ';' sections", inner_base + tail[1][1])
        if name == "over":
            child = _parse_spec(head[0], inner_base + head[1])
            if not tail:
                raise SpecError("over(...) needs a field tag", base + len(s))
            spec = _parse_field_at(tail[0][0].strip(),
                                   inner_base + tail[0][1])
            _check_operand_field(child, spec, base)
            w = child.word
            if w.alphabet_size > spec.q:
                raise SpecError("symbol out of field range", base)
            canonical = f"over({child.canonical};{spec!r})"
            word = InfiniteWord(w.alphabet_size, w.prefix, canonical,
                                field=spec, limit=w.limit)
            return SequenceSpec(text, ("over", child.node, repr(spec)),
                                canonical, word)
        args = _split_top(head[0], ",")
        if len(args) != 2:
            raise SpecError(f"{name}(...) takes two operands",
                            inner_base + head[1])
        a = _parse_spec(args[0][0], inner_base + head[1] + args[0][1])
        b = _parse_spec(args[1][0], inner_base + head[1] + args[1][1])
        if tail:
            spec = _parse_field_at(tail[0][0].strip(),
                                   inner_base + tail[0][1])
        else:
            tags = {w.field for w in (a.word, b.word) if w.field is not None}
            if len(tags) > 1:
                raise SpecError("field mismatch between operands", base)
            if not tags:
                raise SpecError(f"{name}(...) needs a field tag",
                                base + len(s))
            spec = tags.pop()
        for child in (a, b):
            _check_operand_field(child, spec, base)
        combine = word_pointwise_add if name == "sum" else word_pointwise_mul
        try:
            word = combine(a.word, b.word, spec)
        except ValueError as e:
            raise SpecError(str(e), base) from None
        canonical = f"{name}({a.canonical},{b.canonical};{spec!r})"
        return SequenceSpec(text, (name, a.node, b.node, repr(spec)),
                            canonical, word)
    m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?::(.*))?", s, re.S)
    if not m:
        raise SpecError(f"bad spec syntax {s!r}", base)
    name, params = m.group(1), m.group(2)
    if name not in _ATOMS:
        raise SpecError(f"unknown constructor {name!r}", base)
    params_pos = base + len(name) + 1 if params is not None else base
    node, canonical, word = _ATOMS[name](params, params_pos)
    return SequenceSpec(text, node, canonical, word)


def parse_sequence_spec(text: str) -> SequenceSpec:
    """Parse a word spec; raises SpecError with a position on bad input."""
    return _parse_spec(text, 0)


def spec_to_series(sspec: SequenceSpec) -> LaurentSeries:
    """Promote a parsed word to the power series sum a_n T^{-n}."""
    w = sspec.word
    if w.field is None:
        raise SpecError(
            f"{sspec.canonical!r} carries no field; wrap it in over(...;F<q>)",
            0,
        )
    return series_from_word(w, w.field)


# ---------------------------------------------------------------------------
# series expressions


def _poly_canonical(coeffs: dict[int, int]) -> str:
    terms = []
    for deg in sorted(coeffs, reverse=True):
        c = coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if terms else "")
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}T" if deg == 1 else f"{head}T^{deg}"
        terms.append(sign + body)
    return "".join(terms) if terms else "0"


def _parse_poly_literal(text: str, pos: int) -> dict[int, int]:
    try:
        return _parse_poly(text, "T")
    except ValueError as e:
        raise SpecError(str(e), pos) from None


def _poly_indices(coeffs: dict[int, int], spec: FieldSpec) -> list[int]:
    deg = max(coeffs) if coeffs else 0
    return [spec.embed_int(coeffs.get(i, 0)) for i in range(deg + 1)]


def parse_series_expr(text: str) -> SeriesSpec:
    """Parse a series expression over promoted word specs."""
    s, base = _strip(text, 0)
    m = re.match(r"(add|mulpoly|mulrat|cauchy|hadamard|d|cartier|subst)\(",
                 s)
    if not m:
        sspec = _parse_spec(s, base)
        return SeriesSpec(text, sspec.canonical,
                          lambda _n, ss=sspec: spec_to_series(ss))
    name = m.group(1)
    if name == "hadamard":
        # word-level hadamard(A,B;F3) carries a field tag; prefer it
        try:
            sspec = _parse_spec(s, base)
            return SeriesSpec(text, sspec.canonical,
                              lambda _n, ss=sspec: spec_to_series(ss))
        except SpecError:
            pass
    if not s.endswith(")"):
        raise SpecError("expected ')'", base + len(s))
    inner = s[len(name) + 1 : -1]
    inner_base = base + len(name) + 1
    segs = _split_top(inner, ";")
    head, head_pos = segs[0][0], inner_base + segs[0][1]
    tail = ";".join(seg for seg, _ in segs[1:])
    tail_pos = inner_base + (segs[1][1] if len(segs) > 1 else 0)

    if name in ("add", "cauchy", "hadamard"):
        args = _split_top(head, ",")
        if len(args) != 2:
            raise SpecError(f"{name}(...) takes two operands", head_pos)
        a = _parse_spec(args[0][0], head_pos + args[0][1])
        b = _parse_spec(args[1][0], head_pos + args[1][1])
        if name == "cauchy":
            kv = _parse_kv(tail, tail_pos, {"N": (_pos_int(0), -1)})
            n_param = kv["N"] if kv["N"] >= 0 else None
            suffix = f";N={n_param}" if n_param is not None else ""
            canonical = f"cauchy({a.canonical},{b.canonical}{suffix})"

            def build(default_n, a=a, b=b, n_param=n_param):
                horizon = n_param if n_param is not None else default_n
                if horizon is None:
                    raise SpecError("cauchy(...) needs N=", 0)
                return ls_cauchy_mul(spec_to_series(a), spec_to_series(b),
                                     horizon)

            return SeriesSpec(text, canonical, build)
        if tail:
            raise SpecError(f"{name}(...) takes no ';' parameters", tail_pos)
        op = ls_add if name == "add" else ls_hadamard
        canonical = f"{name}({a.canonical},{b.canonical})"
        return SeriesSpec(
            text, canonical,
            lambda _n, a=a, b=b, op=op: op(spec_to_series(a),
                                           spec_to_series(b)),
        )

    if name in ("mulpoly", "mulrat"):
        args = _split_top(head, ",")
        if len(args) != 2:
            raise SpecError(f"{name}(...) takes a polynomial and a spec",
                            head_pos)
        ptxt, ppos = _strip(args[0][0], head_pos + args[0][1])
        a = _parse_spec(args[1][0], head_pos + args[1][1])
        if tail:
            raise SpecError(f"{name}(...) takes no ';' parameters", tail_pos)
        if name == "mulpoly":
            coeffs = _parse_poly_literal(ptxt, ppos)
            canonical = f"mulpoly({_poly_canonical(coeffs)},{a.canonical})"

            def build(_n, a=a, coeffs=coeffs):
                f = spec_to_series(a)
                return ls_mul_poly(_poly_indices(coeffs, f.spec), f)

            return SeriesSpec(text, canonical, build)
        frac = _split_top(ptxt, "/")
        if len(frac) != 2:
            raise SpecError("expected P/Q", ppos)
        pc = _parse_poly_literal(frac[0][0].strip(), ppos + frac[0][1])
        qc = _parse_poly_literal(frac[1][0].strip(), ppos + frac[1][1])
        canonical = (
            f"mulrat({_poly_canonical(pc)}/{_poly_canonical(qc)},"
            f"{a.canonical})"
        )

        def build(_n, a=a, pc=pc, qc=qc, ppos=ppos):
            f = spec_to_series(a)
            try:
                r = RationalFunction(f.spec, _poly_indices(pc, f.spec),
                                     _poly_indices(qc, f.spec))
            except ValueError as e:
                raise SpecError(str(e), ppos) from None
            return ls_mul_rational(r, f)

        return SeriesSpec(text, canonical, build)

    # unary operators d / cartier / subst
    a = _parse_spec(head, head_pos)
    schema = {"d": ("k", 1, ls_derivative), "cartier": ("r", 0, ls_cartier),
              "subst": ("k", 3, ls_substitute_power)}[name]
    key, default, op = schema
    kv = _parse_kv(tail, tail_pos, {key: (_pos_int(0), default)})
    val = kv[key]
    canonical = f"{name}({a.canonical};{key}={val})"

    def build(_n, a=a, op=op, val=val):
        try:
            return op(spec_to_series(a), val)
        except ValueError as e:
            raise SpecError(str(e), 0) from None

    return SeriesSpec(text, canonical, build)
