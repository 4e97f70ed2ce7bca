"""A small expression grammar for scalars.

::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    atom   := NUMBER | NAME | '(' expr ')'

``q`` stands for ``v**D``; ``v`` is the formal root itself; every other name is
a free parameter. Rational exponents are allowed on ``q`` only.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import lcm

from ..errors import ValidationError
from .scalar import Scalar, vq

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValidationError(f"cannot parse {text!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValidationError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.i != len(self.toks):
            raise ValidationError(f"trailing input in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        if self.peek() == ("op", "("):
            self.take()
            if self.peek() == ("op", "-"):
                self.take()
                sign = -sign
            val = self.take("num")[1]
            if self.peek() == ("op", "/"):
                self.take()
                val = val / self.take("num")[1]
            self.take("op", ")")
            return sign * val
        return sign * self.take("num")[1]

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return ("num", val)
        if kind == "name":
            self.take()
            return ("name", val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ValidationError(f"unexpected token {val!r} in {self.text!r}")


def _q_denominators(node, acc: set):
    tag = node[0]
    if tag == "pow":
        if node[1] == ("name", "q"):
            acc.add(Fraction(node[2]).denominator)
        _q_denominators(node[1], acc)
    elif tag in ("+", "-", "*", "/"):
        _q_denominators(node[1], acc)
        _q_denominators(node[2], acc)
    elif tag == "neg":
        _q_denominators(node[1], acc)


def q_denominator(text: str) -> int:
    """Smallest D such that every power of q in ``text`` is a power of v = q^(1/D)."""
    acc: set[int] = {1}
    _q_denominators(_Parser(text).parse(), acc)
    return lcm(*acc)


def _eval(node, D: int) -> Scalar:
    tag = node[0]
    if tag == "num":
        return Scalar.const(node[1])
    if tag == "name":
        if node[1] == "q":
            return vq(1, D)
        if node[1] == "v":
            return Scalar.vpow(1)
        return Scalar.param(node[1])
    if tag == "neg":
        return -_eval(node[1], D)
    if tag == "pow":
        base, e = node[1], Fraction(node[2])
        if base == ("name", "q"):
            return vq(e, D)
        if e.denominator != 1:
            raise ValidationError("rational exponents are only allowed on q")
        return _eval(base, D) ** int(e)
    a, b = _eval(node[1], D), _eval(node[2], D)
    return {"+": a + b, "-": a - b, "*": a * b}[tag] if tag != "/" else a / b


def parse_scalar(text: str, D: int = 1) -> Scalar:
    """Parse ``text`` into a Scalar with ``q = v**D``."""
    return _eval(_Parser(str(text)).parse(), D)
