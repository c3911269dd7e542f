"""
Parser for surd expressions such as "(sqrt(5)-1)/2" or "1/2 + 3/4*sqrt(5)"
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import MixedRadicands, ParseError
from .surd import SurdValue

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            break
        number, sqrt, other = match.groups()
        if number is not None:
            tokens.append(('num', int(number)))
        elif sqrt is not None:
            tokens.append(('sqrt', None))
        elif other.strip():
            if other not in '+-*/()':
                raise ParseError(f"unexpected character {other!r} in {text!r}")
            tokens.append((other, None))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over + - * / ( ) sqrt( )"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def _take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ParseError(f"unexpected end of expression {self.text!r}")
        token = self.tokens[self.pos]
        if kind is not None and token[0] != kind:
            raise ParseError(f"expected {kind!r} in {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> SurdValue:
        if not self.tokens:
            raise ParseError("empty expression")
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def _expr(self):
        value = self._term()
        while self._peek() in ('+', '-'):
            op = self._take()[0]
            rhs = self._term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def _term(self):
        value = self._factor()
        while self._peek() in ('*', '/'):
            op = self._take()[0]
            rhs = self._factor()
            if op == '*':
                value = value * rhs
            else:
                if rhs.sign() == 0:
                    raise ParseError(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def _factor(self):
        kind = self._peek()
        if kind == '-':
            self._take()
            return -self._factor()
        if kind == '+':
            self._take()
            return self._factor()
        if kind == 'num':
            return SurdValue(self._take()[1])
        if kind == '(':
            self._take()
            value = self._expr()
            self._take(')')
            return value
        if kind == 'sqrt':
            self._take()
            self._take('(')
            arg = self._expr()
            self._take(')')
            if not arg.is_rational or arg.sign() < 0:
                raise ParseError(f"sqrt needs a non-negative rational argument in {self.text!r}")
            frac = arg.as_fraction()
            return SurdValue(0, 1, frac.denominator, frac.numerator * frac.denominator)
        raise ParseError(f"unexpected token {kind!r} in {self.text!r}")


def parse_surd(text: str) -> SurdValue:
    """
    Parse a surd expression into an exact SurdValue

    Raises:
        ParseError: on malformed text or when two radicands are mixed
    """
    try:
        return _Parser(text).parse()
    except MixedRadicands as exc:
        raise ParseError(f"{text!r}: {exc}") from exc


def parse_rational(text: str) -> Fraction:
    value = parse_surd(text)
    if not value.is_rational:
        raise ParseError(f"expected a rational, got {text!r}")
    return value.as_fraction()
