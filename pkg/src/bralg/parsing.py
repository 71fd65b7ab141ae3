"""Recursive-descent parser shared by scalars, polynomials and points.

Grammar::

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := unary (('*'|'/') unary)*
    unary := '-' unary | power
    power := atom ['^' ['-'] INT]
    atom  := INT | NAME | '(' expr ')'
"""

from __future__ import annotations

import re
from typing import Callable

from .scalars import FieldElement, FieldSpec

__all__ = ["ParseError", "parse_expression", "parse_scalar", "split_top_level"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.message = message
        self.text = text
        self.pos = pos
        where = f" at column {pos + 1}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, number, symbol, divide):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.number = number
        self.symbol = symbol
        self.divide = divide

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "int" or tok[0] == "name":
            raise ParseError(f"expected {value!r}", self.text, tok[2])
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.text, 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self):
        tok = self.peek()
        negate = False
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            negate = tok[1] == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs_pos = self.peek()[2]
                rhs = self.unary()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    try:
                        value = self.divide(value, rhs)
                    except (ValueError, ZeroDivisionError) as exc:
                        raise ParseError(str(exc), self.text, rhs_pos) from None
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise ParseError("expected integer exponent", self.text, exp_tok[2])
            try:
                return base ** (sign * int(exp_tok[1]))
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise ParseError(str(exc), self.text, exp_tok[2]) from None
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return self.number(int(tok[1]))
        if tok[0] == "name":
            try:
                return self.symbol(tok[1])
            except KeyError:
                raise ParseError(f"unknown symbol {tok[1]!r}", self.text, tok[2]) from None
        if tok[1] == "(":
            value = self.expr()
            self.expect(")")
            return value
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", self.text, tok[2])


def parse_expression(
    text: str,
    number: Callable[[int], object],
    symbol: Callable[[str], object],
    divide: Callable[[object, object], object],
):
    return _Parser(text, number, symbol, divide).parse()


def parse_scalar(spec: FieldSpec, text: str) -> FieldElement:
    def symbol(name):
        if name == "q" and spec.has_q:
            return spec.q
        raise KeyError(name)

    def divide(a, b):
        return a / b

    return parse_expression(text, spec, symbol, divide)


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses and brackets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]
