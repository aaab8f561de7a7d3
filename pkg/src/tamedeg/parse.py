"""Recursive-descent parser for polynomial expressions and degree vectors.

Grammar (whitespace insensitive, no implicit multiplication):

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | var | '(' expr ')'
    rational := nat ('/' nat)?
    var    := 'x' nat          one-based variable index

The optional leading minus makes the canonical renderer's output for
polynomials with a negative leading coefficient parse back; apart from that
the grammar is exactly the one the renderer targets, so parse(render(f)) is
the identity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import DomainError, PolynomialSyntaxError
from .ordgroup import GroupElem
from .poly import Polynomial

DEFAULT_EXPONENT_CAP = 10_000


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind: str, value, pos: int):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolynomialSyntaxError("variable needs an index, like x1", i)
            tokens.append(_Token("var", int(text[i + 1 : j]), i))
            i = j
            continue
        if ch in "+-*^/()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], nvars: int, exponent_cap: int):
        self.tokens = tokens
        self.i = 0
        self.nvars = nvars
        self.exponent_cap = exponent_cap

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise PolynomialSyntaxError(
                f"expected {kind!r}, found {tok.kind!r}", tok.pos
            )
        return self.take()

    def parse_expr(self) -> Polynomial:
        if self.peek().kind == "-":
            self.take()
            value = -self.parse_term()
        else:
            value = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            term = self.parse_term()
            value = value + term if op.kind == "+" else value - term
        return value

    def parse_term(self) -> Polynomial:
        value = self.parse_factor()
        while self.peek().kind == "*":
            self.take()
            value = value * self.parse_factor()
        return value

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        if self.peek().kind == "^":
            self.take()
            tok = self.expect("num")
            if tok.value > self.exponent_cap:
                raise PolynomialSyntaxError(
                    f"exponent {tok.value} exceeds cap {self.exponent_cap}",
                    tok.pos,
                )
            return base ** tok.value
        return base

    def parse_base(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            value = Fraction(tok.value)
            if self.peek().kind == "/":
                self.take()
                den = self.expect("num")
                if den.value == 0:
                    raise PolynomialSyntaxError("division by zero", den.pos)
                value = Fraction(tok.value, den.value)
            return Polynomial.constant(value, self.nvars)
        if tok.kind == "var":
            self.take()
            if not 1 <= tok.value <= self.nvars:
                raise PolynomialSyntaxError(
                    f"variable x{tok.value} out of range (n = {self.nvars})",
                    tok.pos,
                )
            return Polynomial.variable(tok.value - 1, self.nvars)
        if tok.kind == "(":
            self.take()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(
            f"expected a number, variable or '(', found {tok.kind!r}", tok.pos
        )


def parse_polynomial(
    text: str, nvars: int = 3, exponent_cap: int = DEFAULT_EXPONENT_CAP
) -> Polynomial:
    """Parse an expression into a canonical polynomial in nvars variables."""
    tokens = _tokenize(text)
    parser = _Parser(tokens, nvars, exponent_cap)
    value = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise PolynomialSyntaxError(
            f"trailing input starting with {tail.kind!r}"
            + (" (implicit multiplication is not allowed)" if tail.kind in ("num", "var", "(") else ""),
            tail.pos,
        )
    return value


def parse_vector(text: str) -> GroupElem:
    """Parse '5' or '[1,0,2]' into a group element."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise DomainError(f"unclosed bracket in {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            raise DomainError("empty vector")
        try:
            coords = tuple(int(p.strip()) for p in inner.split(","))
        except ValueError as exc:
            raise DomainError(f"bad vector {text!r}: {exc}") from exc
        return GroupElem(coords)
    try:
        return GroupElem((int(text),))
    except ValueError as exc:
        raise DomainError(f"bad integer {text!r}") from exc


def split_vector_entries(text: str) -> list[str]:
    """Split on commas that sit outside brackets."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise DomainError(f"unbalanced ']' in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise DomainError(f"unbalanced '[' in {text!r}")
    parts.append("".join(current))
    return [p for p in (q.strip() for q in parts) if p]


def parse_vector_list(text: str, rank: Optional[int] = None) -> list[GroupElem]:
    """Parse a comma-separated list of vector entries, enforcing one rank."""
    entries = [parse_vector(p) for p in split_vector_entries(text)]
    if not entries:
        raise DomainError("empty entry list")
    want = rank if rank is not None else entries[0].rank
    for e in entries:
        if e.rank != want:
            raise DomainError(
                f"mixed ranks in {text!r}: expected rank {want}, got {e.rank}"
            )
    return entries
