"""Noncommutative polynomials in named generators, with inverse pairs.

A word is a tuple of generator names.  The inverse of generator ``a`` is
the generator named ``a^-1``; adjacent inverse pairs cancel.  Coefficients
are raw values of a :class:`~morita.fields.Field`.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping

from .fields import Field, FieldMismatch, QQ, Scalar

Word = tuple  # tuple[str, ...]

INV = "^-1"


class ParseError(ValueError):
    pass


class UnknownGenerator(ParseError):
    def __init__(self, name):
        super().__init__(f"unknown generator {name!r}")
        self.name = name


def inverse_name(name: str) -> str:
    return name[: -len(INV)] if name.endswith(INV) else name + INV


def is_inverse_name(name: str) -> bool:
    return name.endswith(INV)


def reduce_word(word: Iterable[str]) -> Word:
    """Free reduction: cancel adjacent ``g g^-1`` and ``g^-1 g``."""
    stack = []
    for g in word:
        if stack and stack[-1] == inverse_name(g):
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


def join_reduced(u: Word, v: Word) -> Word:
    """Concatenate two already reduced words, cancelling only at the seam."""
    if not u or not v or u[-1] != inverse_name(v[0]):
        return u + v
    i = 1
    n = min(len(u), len(v))
    while i < n and u[-1 - i] == inverse_name(v[i]):
        i += 1
    return u[: len(u) - i] + v[i:] if i else u + v


def invert_word(word: Word) -> Word:
    return tuple(inverse_name(g) for g in reversed(word))


class NCPoly:
    """Finite linear combination of reduced words."""

    __slots__ = ("field", "terms")

    def __init__(self, terms: Mapping | None = None, field: Field = QQ, *, _trusted=False):
        self.field = field
        if _trusted:
            self.terms = terms
            return
        acc = {}
        for w, c in (terms or {}).items():
            w = reduce_word(w)
            c = field(c)
            acc[w] = field.add(acc.get(w, field.zero), c)
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def const(cls, c, field: Field = QQ) -> "NCPoly":
        return cls({(): c}, field)

    @classmethod
    def word(cls, word: Iterable[str], c=1, field: Field = QQ) -> "NCPoly":
        return cls({tuple(word): c}, field)

    @classmethod
    def gen(cls, name: str, field: Field = QQ) -> "NCPoly":
        return cls({(name,): 1}, field)

    @classmethod
    def zero(cls, field: Field = QQ) -> "NCPoly":
        return cls({}, field, _trusted=True)

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return NCPoly.const(self.field(other), self.field)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)) or not isinstance(other, NCPoly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        acc = dict(self.terms)
        for w, c in other.terms.items():
            x = F.add(acc.get(w, F.zero), c)
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
        return NCPoly(acc, F, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return NCPoly({w: F.neg(c) for w, c in self.terms.items()}, F, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "NCPoly":
        F = self.field
        c = F(c)
        if not c:
            return NCPoly.zero(F)
        return NCPoly({w: F.mul(c, v) for w, v in self.terms.items()}, F, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def generators(self) -> set:
        return {g for w in self.terms for g in w}

    def coefficient(self, word: Iterable[str]):
        return self.terms.get(tuple(word), self.field.zero)

    def constant_term(self):
        return self.terms.get((), self.field.zero)

    def sorted_terms(self, key: Callable | None = None):
        key = key or (lambda w: (len(w), w))
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def render(self, key: Callable | None = None) -> str:
        return render(self, key)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"NCPoly({render(self)!r}, {self.field})"


def multiply(u: NCPoly, v: NCPoly) -> NCPoly:
    """Concatenate words bilinearly and freely reduce; no Koszul signs."""
    if u.field != v.field:
        raise FieldMismatch(f"{u.field} vs {v.field}")
    F = u.field
    acc: dict = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            w = reduce_word(w1 + w2)
            x = F.add(acc.get(w, F.zero), F.mul(c1, c2))
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
    return NCPoly(acc, F, _trusted=True)


# --------------------------------------------------------------------------
# text syntax: ``3*a*a^-1*b - 1``

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
                    r"|(?P<pow>\^\s*-?\d+)|(?P<op>[-+*]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at column {pos + 1} in {text!r}")
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "pow":
            val = int(val[1:].replace(" ", ""))
        out.append((kind, val, m.start(kind) + 1))
        pos = m.end()
    return out


def parse_poly(text: str, field: Field = QQ, known: Iterable[str] | None = None) -> NCPoly:
    """Parse the textual syntax; ``known`` restricts the allowed generator names."""
    known = None if known is None else set(known)
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    terms: dict = {}
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if kind == "op" and val in "+-" and expect_term:
            if val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            if kind == "op" and val in "+-":
                sign = 1 if val == "+" else -1
                expect_term = True
                i += 1
                continue
            raise ParseError(f"expected '+' or '-' at column {col} in {text!r}")
        coef = field(1)
        word: list = []
        have = False
        while i < len(toks):
            kind, val, col = toks[i]
            if kind == "num":
                coef = field.mul(coef, field(val))
            elif kind == "name":
                power = 1
                if i + 1 < len(toks) and toks[i + 1][0] == "pow":
                    power = toks[i + 1][1]
                    i += 1
                base = inverse_name(val) if power < 0 else val
                if known is not None and val not in known:
                    raise UnknownGenerator(val)
                if power < 0 and known is not None and inverse_name(val) not in known:
                    raise ParseError(f"generator {val!r} is not invertible")
                word.extend([base] * abs(power))
            else:
                raise ParseError(f"unexpected {val!r} at column {col} in {text!r}")
            have = True
            i += 1
            if i < len(toks) and toks[i][:2] == ("op", "*"):
                i += 1
                if i >= len(toks) or toks[i][0] not in ("num", "name"):
                    raise ParseError(f"dangling '*' in {text!r}")
                continue
            break
        if not have:
            raise ParseError(f"missing term in {text!r}")
        w = reduce_word(word)
        c = field.mul(coef, field(sign))
        terms[w] = field.add(terms.get(w, field.zero), c)
        expect_term = False
        sign = 1
    if expect_term:
        raise ParseError(f"trailing operator in {text!r}")
    return NCPoly({w: c for w, c in terms.items() if c}, field, _trusted=True)


def render(p: NCPoly, key: Callable | None = None) -> str:
    if not p.terms:
        return "0"
    F = p.field
    parts = []
    for w, c in p.sorted_terms(key):
        neg = F.char == 0 and c < 0
        mag = -c if neg else c
        body = "*".join(w)
        if not body:
            s = F.render(mag)
        elif mag == F.one:
            s = body
        else:
            s = f"{F.render(mag)}*{body}"
        parts.append(("-" if neg else "+", s))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, s in parts[1:]:
        out += f" {sgn} {s}"
    return out
