"""Parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' INT))*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Identifiers are ``[A-Za-z][A-Za-z0-9_']*``.  Implicit multiplication is a
syntax error.  Division is only allowed by an integer literal so that
rational coefficients printed by :func:`format_poly` parse back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, VariableRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_']*)|(.))")


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos}: {text!r}")


class UnknownVariable(KeyError):
    def __init__(self, msg: str, name: str = "", pos: int = 0):
        self.name, self.pos = name, pos
        super().__init__(msg)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("id", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        p = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            if op == "*":
                p = p * self.unary()
            else:
                tok = self.take("int")
                if tok[1] == 0:
                    raise PolySyntaxError("division by zero", self.text, tok[2])
                p = p * Fraction(1, tok[1])
        kind, _, pos = self.peek()
        if kind in ("id", "int", "("):
            raise PolySyntaxError("implicit multiplication is not allowed", self.text, pos)
        return p

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] == "^":
            self.take()
            k = self.take("int")[1]
            p = p**k
        return p

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(val)
        if kind == "id":
            self.take()
            if val not in self.ring.variables:
                raise UnknownVariable(
                    f"unknown variable {val!r} at position {pos} (ring has {', '.join(self.ring.variables)})", val, pos
                )
            return self.ring.gen(val)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        what = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"unexpected {what}", self.text, pos)


def parse_poly(text: str, ring: VariableRing) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``.

    >>> parse_poly("(x - y)*(x + y)", VariableRing(("x", "y")))
    Polynomial('x^2 - y^2')
    """
    parser = _Parser(text, ring)
    if parser.peek()[0] == "end":
        raise PolySyntaxError("empty expression", text, 0)
    p = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise PolySyntaxError(f"unexpected {tok[1]!r}", text, tok[2])
    return p
