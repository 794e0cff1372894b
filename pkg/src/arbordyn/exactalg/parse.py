"""Text grammar for polynomials in ``x``.

Accepts integer literals, ``x``, ``+ - * / ^`` (``**`` also works) and
parentheses, with implicit multiplication such as ``3x`` or ``2(x+1)``.
Division is only allowed by nonzero constants, so ``x^2/3 + 1`` and
``-1/7`` are fine. A JSON array of coefficients, lowest degree first, is
accepted as well: ``[1, 0, "-1/2"]``.
"""

import json
import re
from fractions import Fraction

from arbordyn.errors import PolyParseError
from arbordyn.exactalg.polyq import PolyQ
from arbordyn.exactalg.rational import as_rational

_DECIMAL = re.compile(r"[-+]?\d*\.\d+(?:[eE][-+]?\d+)?")
_TOKEN = re.compile(r"\s*(?:(\d+)|([xX])|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("x", None))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}")

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "x") or (kind == "op" and val == "(")

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    acc = acc * rhs
                else:
                    if rhs.degree != 0:
                        raise PolyParseError("division only by nonzero constants")
                    acc = acc * (1 / rhs.lc)
            elif self._starts_factor():
                acc = acc * self.unary()
            else:
                return acc

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind == "num":
                exp = val
            elif kind == "op" and val == "(":
                k2, v2 = self.take()
                if k2 != "num":
                    raise PolyParseError("exponent must be a nonnegative integer")
                self.expect_op(")")
                exp = v2
            else:
                raise PolyParseError("exponent must be a nonnegative integer")
            return base**exp
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return PolyQ.const(val)
        if kind == "x":
            return PolyQ.x()
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise PolyParseError("unexpected end of input" if kind is None else f"unexpected {val!r}")


def parse_poly(text):
    """Parse polynomial text (or a JSON coefficient array) into a PolyQ."""
    if isinstance(text, PolyQ):
        return text
    if isinstance(text, (list, tuple)):
        return _from_list(text)
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial")
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise PolyParseError(f"bad JSON coefficient array: {exc}") from exc
        return _from_list(data)
    parser = _Parser(_tokenize(s))
    out = parser.expr()
    if parser.i != len(parser.toks):
        raise PolyParseError(f"trailing input after token {parser.i}")
    return out


def _from_list(data):
    if not isinstance(data, list):
        raise PolyParseError("JSON coefficients must be an array")
    try:
        return PolyQ(as_rational(c) for c in data)
    except TypeError as exc:
        raise PolyParseError(str(exc)) from exc


def parse_rational(text):
    """Parse a rational constant such as ``3``, ``-1/7``, ``(2)/(3)`` or ``0.015``."""
    if not isinstance(text, str):
        return as_rational(text)
    if _DECIMAL.fullmatch(text.strip()):
        return Fraction(text.strip())
    f = parse_poly(text)
    if f.degree > 0:
        raise PolyParseError(f"expected a rational constant, got {text!r}")
    return f.coeff(0)
