"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)`` terms
with strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
Everything else in the package indexes levels, clubs and walk values by these.
"""
from __future__ import annotations

import re
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Union

__all__ = [
    "Ordinal",
    "OrdinalSyntaxError",
    "NonCanonicalError",
    "ZERO",
    "ONE",
    "OMEGA",
    "Kind",
    "parse_ordinal",
    "compare",
    "add",
    "multiply",
    "divides",
    "classify",
    "predecessor",
    "fundamental_sequence",
    "fundamental_index",
    "finite",
    "omega_power",
    "ordinal_grid",
]

OrdinalLike = Union["Ordinal", int, str]


class OrdinalSyntaxError(ValueError):
    pass


class NonCanonicalError(ValueError):
    """Raised for notation whose exponents do not strictly decrease or that has a zero coefficient."""


class Kind(str, Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        prev = None
        for exp, coef in terms:
            if not isinstance(exp, Ordinal) or not isinstance(coef, int):
                raise TypeError(f"bad term {(exp, coef)!r}")
            if coef < 1:
                raise NonCanonicalError(f"coefficient {coef} < 1")
            if prev is not None and _cmp(exp, prev) >= 0:
                raise NonCanonicalError("exponents must strictly decrease")
            prev = exp
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def _raw(cls, terms: tuple) -> "Ordinal":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = hash(terms)
        return obj

    @staticmethod
    def coerce(x: OrdinalLike) -> "Ordinal":
        if isinstance(x, Ordinal):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not an ordinal")
        if isinstance(x, int):
            return finite(x)
        if isinstance(x, str):
            return parse_ordinal(x)
        raise TypeError(f"cannot interpret {x!r} as an ordinal")

    # -- structure -----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero:
            return self.terms[-1][1]
        return 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.finite_part

    # -- protocol ------------------------------------------------------
    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite and self.finite_part == other
        return NotImplemented

    def __lt__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else _cmp(self, other) < 0

    def __le__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else _cmp(self, other) <= 0

    def __gt__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else _cmp(self, other) > 0

    def __ge__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else _cmp(self, other) >= 0

    def __add__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else add(self, other)

    def __radd__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else add(other, self)

    def __mul__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else multiply(self, other)

    def __rmul__(self, other):
        other = _maybe(other)
        return NotImplemented if other is None else multiply(other, self)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return _format(self)

    def __repr__(self) -> str:
        return f"Ordinal({_format(self)!r})"

    def __reduce__(self):
        return (parse_ordinal, (_format(self),))


def _maybe(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return finite(x)
    return None


ZERO = Ordinal._raw(())


@lru_cache(maxsize=4096)
def finite(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    return ZERO if n == 0 else Ordinal._raw(((ZERO, n),))


ONE = finite(1)
OMEGA = Ordinal._raw(((ONE, 1),))


def omega_power(exp: OrdinalLike, coef: int = 1) -> Ordinal:
    """``w^exp * coef``."""
    if coef == 0:
        return ZERO
    return Ordinal._raw(((Ordinal.coerce(exp), coef),))


def _cmp(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return 0
    ta, tb = a.terms, b.terms
    for (ea, ca), (eb, cb) in zip(ta, tb):
        if ea is not eb and ea.terms != eb.terms:
            return _cmp(ea, eb)
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(ta) > len(tb)) - (len(ta) < len(tb))


def compare(a: OrdinalLike, b: OrdinalLike) -> str:
    c = _cmp(Ordinal.coerce(a), Ordinal.coerce(b))
    return "less" if c < 0 else "greater" if c > 0 else "equal"


# -- parsing and printing ----------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise OrdinalSyntaxError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise OrdinalSyntaxError(f"expected {expect or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def ordinal(self) -> Ordinal:
        if self.peek() == "0" and (self.i + 1 == len(self.toks) or self.toks[self.i + 1] == ")"):
            self.take()
            return ZERO
        terms = [self.term()]
        while self.peek() == "+":
            self.take()
            terms.append(self.term())
        for (e0, _), (e1, _) in zip(terms, terms[1:]):
            if _cmp(e1, e0) >= 0:
                raise NonCanonicalError(f"exponents not strictly decreasing in {self.text!r}")
        return Ordinal._raw(tuple(terms))

    def term(self) -> tuple[Ordinal, int]:
        tok = self.take()
        if tok.isdigit():
            n = int(tok)
            if n == 0:
                raise NonCanonicalError(f"zero coefficient in {self.text!r}")
            return (ZERO, n)
        if tok != "w":
            raise OrdinalSyntaxError(f"unexpected {tok!r} in {self.text!r}")
        exp = ONE
        if self.peek() == "^":
            self.take()
            if self.peek() == "(":
                self.take()
                exp = self.ordinal()
                self.take(")")
            else:
                tok = self.take()
                if tok == "w":
                    exp = OMEGA
                elif tok.isdigit():
                    exp = finite(int(tok))
                else:
                    raise OrdinalSyntaxError(f"bad exponent in {self.text!r}")
        coef = 1
        if self.peek() == "*":
            self.take()
            digits = self.take()
            if not digits.isdigit():
                raise OrdinalSyntaxError(f"bad coefficient in {self.text!r}")
            coef = int(digits)
            if coef == 0:
                raise NonCanonicalError(f"zero coefficient in {self.text!r}")
        return (exp, coef)


@lru_cache(maxsize=8192)
def parse_ordinal(text: str) -> Ordinal:
    """Parse CNF notation such as ``w^(2)*3+w+5``; ``w^2`` and ``w*3`` are accepted sugar."""
    if not text.strip():
        raise OrdinalSyntaxError("empty ordinal")
    p = _Parser(text)
    val = p.ordinal()
    if p.peek() is not None:
        raise OrdinalSyntaxError(f"trailing input in {text!r}")
    return val


def _format(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp.is_zero:
            parts.append(str(coef))
            continue
        head = "w" if exp == ONE else f"w^({_format(exp)})"
        parts.append(head if coef == 1 else f"{head}*{coef}")
    return "+".join(parts)


# -- arithmetic ----------------------------------------------------------

def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = Ordinal.coerce(a), Ordinal.coerce(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead, lcoef = b.terms[0]
    keep = []
    for exp, coef in a.terms:
        c = _cmp(exp, lead)
        if c > 0:
            keep.append((exp, coef))
        elif c == 0:
            keep.append((exp, coef + lcoef))
            return Ordinal._raw(tuple(keep) + b.terms[1:])
        else:
            break
    return Ordinal._raw(tuple(keep) + b.terms)


def multiply(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = Ordinal.coerce(a), Ordinal.coerce(b)
    if not a.terms or not b.terms:
        return ZERO
    lead, lcoef = a.terms[0]
    out = ZERO
    for exp, coef in b.terms:
        if exp.is_zero:
            piece = Ordinal._raw(((lead, lcoef * coef),) + a.terms[1:])
        else:
            piece = Ordinal._raw(((add(lead, exp), coef),))
        out = add(out, piece)
    return out


def divides(k: OrdinalLike, b: OrdinalLike) -> bool:
    """True iff ``b = k * g`` for some ordinal ``g`` (left divisibility)."""
    k, b = Ordinal.coerce(k), Ordinal.coerce(b)
    if not k.terms:
        raise ZeroDivisionError("divisor is 0")
    lead, lcoef = k.terms[0]
    # terms of b above k's leading exponent come from the infinite part of g
    # and always have the form w^(lead + e); only the low part is constrained
    low = [t for t in b.terms if _cmp(t[0], lead) <= 0]
    if not low:
        return True
    exp, coef = low[0]
    if _cmp(exp, lead) != 0 or coef % lcoef:
        return False
    return tuple(low[1:]) == k.terms[1:]


def classify(a: OrdinalLike) -> Kind:
    a = Ordinal.coerce(a)
    if not a.terms:
        return Kind.ZERO
    return Kind.SUCCESSOR if a.terms[-1][0].is_zero else Kind.LIMIT


def predecessor(a: OrdinalLike) -> Ordinal:
    a = Ordinal.coerce(a)
    if classify(a) is not Kind.SUCCESSOR:
        raise ValueError(f"{a} is not a successor")
    *head, (_, c) = a.terms
    return Ordinal._raw(tuple(head) + (((ZERO, c - 1),) if c > 1 else ()))


@lru_cache(maxsize=1 << 16)
def fundamental_sequence(a: Ordinal, n: int) -> Ordinal:
    """n-th entry of the canonical fundamental sequence of a limit ordinal.

    ``(B + w^E*c)[n] = B + w^E*(c-1) + w^E[n]``, ``w^(e+1)[n] = w^e*(n+1)``
    and ``w^E[n] = w^(E[n])`` for limit ``E``.  Entries are positive and
    strictly increasing with supremum ``a``.
    """
    a = Ordinal.coerce(a)
    if n < 0:
        raise ValueError("index must be a natural number")
    if classify(a) is not Kind.LIMIT:
        raise ValueError(f"{a} is not a limit ordinal")
    *head, (exp, coef) = a.terms
    base = Ordinal._raw(tuple(head) + (((exp, coef - 1),) if coef > 1 else ()))
    if classify(exp) is Kind.SUCCESSOR:
        step = Ordinal._raw(((predecessor(exp), n + 1),))
    else:
        step = Ordinal._raw(((fundamental_sequence(exp, n), 1),))
    return add(base, step)


def fundamental_index(a: Ordinal, x: Ordinal) -> tuple[int, bool]:
    """For ``x < a`` return ``(m, hit)``: ``m`` entries of ``a``'s sequence lie below ``x``; ``hit`` iff ``a[m] == x``."""
    if x >= a:
        raise ValueError(f"{x} is not below {a}")
    if fundamental_sequence(a, 0) >= x:
        return 0, fundamental_sequence(a, 0) == x
    lo, hi = 0, 1
    while fundamental_sequence(a, hi) < x:
        lo, hi = hi, hi * 2
    # a[lo] < x <= a[hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fundamental_sequence(a, mid) < x:
            lo = mid
        else:
            hi = mid
    return hi, fundamental_sequence(a, hi) == x


def ordinal_grid(caps: dict[int, int], below: OrdinalLike | None = None) -> list[Ordinal]:
    """All ordinals ``sum_e w^e * c_e`` with ``0 <= c_e <= caps[e]``, ascending.

    ``caps`` maps finite exponents to coefficient caps, e.g. ``{2: 2, 1: 5, 0: 5}``.
    """
    exps = sorted(caps, reverse=True)
    out = []

    def rec(i: int, acc: list) -> Iterator:
        if i == len(exps):
            yield Ordinal._raw(tuple(acc))
            return
        for c in range(caps[exps[i]] + 1):
            yield from rec(i + 1, acc + [(finite(exps[i]), c)] if c else acc)

    out = sorted(set(rec(0, [])))
    if below is not None:
        bound = Ordinal.coerce(below)
        out = [x for x in out if x < bound]
    return out
