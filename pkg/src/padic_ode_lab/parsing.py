"""Minimal infix grammar for polynomials and rational functions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | VAR | NAME | '(' expr ')'

There is no implicit multiplication: ``2x`` is an error, ``2*x`` is not.
Rational scalars are written as quotients, e.g. ``1/3``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact_algebra import Polynomial, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, var: str, constants: dict):
        self.text = text
        self.var = var
        self.constants = constants
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> RationalFunction:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.text, 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, pos)
                value = value / rhs
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            negative = False
            if self.peek()[0] == "-":
                self.take()
                negative = True
            _, n, pos = self.take("num")
            if negative:
                if base.is_zero():
                    raise ParseError("zero to a negative power", self.text, pos)
                return base ** (-n)
            return base**n
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return RationalFunction(Fraction(value))
        if kind == "name":
            self.take()
            if value == self.var:
                return RationalFunction(Polynomial.x())
            if value in self.constants:
                return RationalFunction(Fraction(self.constants[value]))
            raise ParseError(f"unknown name {value!r} (variable is {self.var!r})", self.text, pos)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", self.text, pos)


def parse_rational_function(text: str, var: str = "x", constants: dict | None = None) -> RationalFunction:
    return _Parser(text, var, constants or {}).parse()


def parse_polynomial(text: str, var: str = "x", constants: dict | None = None) -> Polynomial:
    rf = parse_rational_function(text, var, constants)
    if not rf.is_polynomial():
        raise ParseError("expected a polynomial, got a rational function", text, 0)
    return rf.as_polynomial()


def parse_rational(text: str) -> Fraction:
    """A rational scalar such as ``-3``, ``1/2`` or ``-(7/3)``."""
    rf = parse_rational_function(text, var="\0")
    if not rf.is_constant():
        raise ParseError("expected a rational number", text, 0)
    return rf.num[0]
