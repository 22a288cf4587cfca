"""Minimal arithmetic expression grammar for user-supplied potentials.

Grammar (recursive descent):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := number | 'pi' | 'x'<k> | 'exp' '(' expr ')' | '(' expr ')'

Variables x1..xN address coordinates; the compiled callable is vectorized
over arrays of shape (..., N).
"""

from __future__ import annotations

import math
import re

import numpy as np

from .core import ValidationError

__all__ = ["parse_potential", "parse_number"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ValidationError(f"unexpected character {text[pos:].lstrip()[0]!r}")
            break
        pos = m.end()
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group("num"))))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, dimension):
        self.tokens = tokens
        self.pos = 0
        self.dimension = dimension

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ValidationError(f"expected {kind}, found {tok[1]!r}")
        if value is not None and tok[1] != value:
            raise ValidationError(f"expected {value!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take()[1]
            rhs = self.term()
            node = (
                (lambda a, b: lambda x: a(x) + b(x))
                if op == "+"
                else (lambda a, b: lambda x: a(x) - b(x))
            )(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take()[1]
            rhs = self.factor()
            node = (
                (lambda a, b: lambda x: a(x) * b(x))
                if op == "*"
                else (lambda a, b: lambda x: a(x) / b(x))
            )(node, rhs)
        return node

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            inner = self.factor()
            return lambda x, f=inner: -f(x)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            expo = self.factor()
            return lambda x, b=base, e=expo: b(x) ** e(x)
        return base

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return lambda x, v=value: np.full(np.shape(x)[:-1], v, dtype=float)
        if kind == "name":
            self.take()
            if value == "pi":
                return lambda x: np.full(np.shape(x)[:-1], math.pi)
            if value == "exp":
                self.take("op", "(")
                inner = self.expr()
                self.take("op", ")")
                return lambda x, f=inner: np.exp(f(x))
            m = re.fullmatch(r"x(\d+)", value)
            if m:
                k = int(m.group(1))
                if not (1 <= k <= self.dimension):
                    raise ValidationError(
                        f"variable {value} out of range for dimension {self.dimension}"
                    )
                return lambda x, i=k - 1: np.asarray(x, dtype=float)[..., i]
            raise ValidationError(f"unknown name {value!r}")
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ValidationError(f"unexpected token {value!r}")


def parse_potential(text: str, dimension: int):
    """Compile an expression into a vectorized potential evaluator."""
    if dimension < 1:
        raise ValidationError("dimension must be >= 1")
    parser = _Parser(_tokenize(text), dimension)
    fn = parser.expr()
    parser.take("end")
    probe = np.zeros((1, dimension))
    try:
        out = np.asarray(fn(probe), dtype=float)
    except ZeroDivisionError as exc:
        raise ValidationError(f"expression fails at the origin: {exc}") from exc
    if out.shape != (1,):
        raise ValidationError("expression must reduce to a scalar per point")
    return fn


_NUMBER_PI = re.compile(
    r"(?i)^\s*(?P<sign>[+-])?\s*(?P<coef>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*"
    r"(?P<pi>pi)?\s*(?:/\s*(?P<div>[+-]?(?:\d+\.?\d*|\.\d+)))?\s*$"
)


def parse_number(text: str) -> float:
    """Float parser for CLI flags; accepts forms like 2pi, pi/2, 1.5e-3."""
    m = _NUMBER_PI.match(text)
    if not m or (m.group("coef") is None and m.group("pi") is None):
        raise ValidationError(f"cannot parse number {text!r}")
    value = float(m.group("coef")) if m.group("coef") is not None else 1.0
    if m.group("sign") == "-":
        value = -value
    if m.group("pi"):
        value *= math.pi
    if m.group("div") is not None:
        value /= float(m.group("div"))
    return value
