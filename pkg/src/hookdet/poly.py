"""Sparse multivariate polynomials with exact integer coefficients.

Every variable is a block-indexed level variable ``x[i,j,k]``: block row i,
block column j, level k (all 1-based). Plain hook variables ``x_k`` are
``x[1,1,k]``.

A monomial is stored as a flat tuple ``(code0, exp0, code1, exp1, ...)`` with
strictly increasing variable codes. Codes pack ``(i, j, k)`` so that integer
order equals lexicographic order on the triple, hence comparing monomial
tuples is the lexicographic order on sorted ``(VarId, exponent)`` pairs. That
order drives the canonical text rendering.
"""

from __future__ import annotations

import re
from types import MappingProxyType
from typing import Mapping, NamedTuple

from hookdet import kernels as _k
from hookdet.errors import MissingVariable, ParseError

_BITS = 20
_MASK = (1 << _BITS) - 1
_LIMIT = 1 << _BITS


class VarId(NamedTuple):
    block_row: int
    block_col: int
    level: int

    def __str__(self):
        return f"x[{self.block_row},{self.block_col},{self.level}]"


def var_code(v) -> int:
    i, j, k = v
    if not (1 <= i < _LIMIT and 1 <= j < _LIMIT and 1 <= k < _LIMIT):
        raise ValueError(f"variable indices must lie in [1, {_LIMIT - 1}], got {tuple(v)}")
    return (i << (2 * _BITS)) | (j << _BITS) | k


def var_from_code(code: int) -> VarId:
    return VarId(code >> (2 * _BITS), (code >> _BITS) & _MASK, code & _MASK)


def monomial(exponents: Mapping) -> tuple:
    """Canonical monomial from a ``{VarId: exponent}`` mapping (zeros dropped)."""
    pairs = []
    for v, e in exponents.items():
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            pairs.append((var_code(v), int(e)))
    pairs.sort()
    out = []
    for c, e in pairs:
        if out and out[-2] == c:
            out[-1] += e
        else:
            out.extend((c, e))
    return tuple(out)


def monomial_exponents(m: tuple) -> dict:
    return {var_from_code(m[t]): m[t + 1] for t in range(0, len(m), 2)}


def _canonical_key(m) -> tuple:
    # accepts already-flat tuples or (VarId, exp) mappings
    if isinstance(m, tuple):
        if len(m) % 2:
            raise ValueError(f"malformed monomial {m!r}")
        ex = {}
        for t in range(0, len(m), 2):
            v = var_from_code(m[t]) if isinstance(m[t], int) else m[t]
            ex[v] = ex.get(v, 0) + m[t + 1]
        return monomial(ex)
    return monomial(m)


class Polynomial:
    """Immutable polynomial; equality is identity of canonical term maps."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        out = {}
        if terms:
            for m, c in terms.items():
                key = _canonical_key(m)
                out[key] = out.get(key, 0) + int(c)
        self._terms = {m: c for m, c in out.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # caller guarantees canonical keys and no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls._raw({(): int(c)} if c else {})

    @classmethod
    def var(cls, block_row: int, block_col: int, level: int) -> "Polynomial":
        return cls._raw({(var_code((block_row, block_col, level)), 1): 1})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, int):
            return cls.const(x)
        if isinstance(x, str):
            return parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def variables(self) -> list:
        codes = set()
        for m in self._terms:
            codes.update(m[0::2])
        return [var_from_code(c) for c in sorted(codes)]

    def degree(self) -> int:
        return max((sum(m[1::2]) for m in self._terms), default=-1)

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial._raw(_k.add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial._raw(_k.add_terms(self._terms, other._terms, -1))

    def __rsub__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return Polynomial.const(other) - self

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial._raw(_k.mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def eval(self, assignment: Mapping) -> int:
        values = {var_code(v): val for v, val in assignment.items()}
        try:
            return _k.eval_terms(self._terms, values)
        except KeyError as exc:
            raise MissingVariable(var_from_code(exc.args[0])) from None

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({(): 1})


def x(block_row: int, block_col: int, level: int) -> Polynomial:
    return Polynomial.var(block_row, block_col, level)


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def evaluate(p: Polynomial, assignment: Mapping) -> int:
    return p.eval(assignment)


def normalize(p) -> Polynomial:
    """Canonical form of a Polynomial or of a raw ``{monomial: coeff}`` map."""
    if isinstance(p, Polynomial):
        return Polynomial(p._terms)
    return Polynomial(p)


def _render_monomial(m: tuple) -> str:
    parts = []
    for t in range(0, len(m), 2):
        s = str(var_from_code(m[t]))
        if m[t + 1] != 1:
            s += f"^{m[t + 1]}"
        parts.append(s)
    return "*".join(parts)


def render(p: Polynomial) -> str:
    """Canonical text form, e.g. ``x[1,1,1]*x[1,1,2] - x[1,1,2]^2``."""
    if not p._terms:
        return "0"
    out = []
    for m in sorted(p._terms):
        c = p._terms[m]
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        elif a == 1:
            body = _render_monomial(m)
        else:
            body = f"{a}*{_render_monomial(m)}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(x\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\])|(\d+)|([-+*^()]))")


def parse(text: str) -> Polynomial:
    """Parse the canonical rendering (and any sum of products of integers and
    ``x[i,j,k]`` factors with ``^`` powers and parentheses)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 12]!r}")
        if mt.group(1):
            tokens.append(("var", tuple(int(mt.group(g)) for g in (2, 3, 4))))
        elif mt.group(5):
            tokens.append(("int", int(mt.group(5))))
        else:
            tokens.append(("op", mt.group(6)))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise ParseError("empty polynomial")
    return _Parser(tokens).parse()


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing tokens after position {self.i}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            total = total - t if op == "-" else total + t
        return total

    def term(self):
        p = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.power()
        return p

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "var":
            try:
                return Polynomial.var(*val)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        if kind == "int":
            return Polynomial.const(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return p
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")
