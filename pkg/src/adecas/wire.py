"""Text format for polynomials: fully parenthesized ASCII with ``*`` and ``^``.

Every term is wrapped in parentheses, so ``b*v2 - v1^2`` is written
``(b*v2) + (-v1^2)``.  The imaginary unit is ``I``.  Negative exponents of
invertible variables are written ``g^(-2)``.  :func:`parse_polynomial` reads
this format back exactly, and also accepts ordinary infix input.
"""

from __future__ import annotations

import re
from typing import List

from gmpy2 import mpq

from .polyring import GaussianRational, I, Polynomial, VarTable, format_coeff


def _mono_str(ring: VarTable, m) -> str:
    parts = []
    for name, k in zip(ring.names, m):
        if k == 1:
            parts.append(name)
        elif k < 0:
            parts.append(f"{name}^({k})")
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _sort_key(m):
    return (sum(m), m)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m in sorted(p.terms, key=_sort_key, reverse=True):
        c = p.terms[m]
        ms = _mono_str(p.ring, m)
        if not ms:
            body = format_coeff(c)
        elif not isinstance(c, GaussianRational) and c == 1:
            body = ms
        elif not isinstance(c, GaussianRational) and c == -1:
            body = "-" + ms
        else:
            body = f"{format_coeff(c)}*{ms}"
        out.append(f"({body})")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> List[str]:
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        toks.append("^" if tok == "**" else tok)
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, ring: VarTable):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, found {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division is only allowed by nonzero constants")
                p = p / q.constant_coeff()
        return p

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            k = self.exponent()
            return base ** k
        return base

    def exponent(self) -> int:
        tok = self.peek()
        if tok == "(":
            self.take("(")
            sign = 1
            if self.peek() in ("-", "+"):
                sign = -1 if self.take() == "-" else 1
            k = int(self.take())
            self.take(")")
            return sign * k
        if tok == "-":
            self.take()
            return -int(self.take())
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"bad exponent {tok!r}")
        return int(tok)

    def atom(self):
        tok = self.take()
        if tok == "(":
            p = self.expr()
            self.take(")")
            return p
        if tok.isdigit():
            return self.ring.const(mpq(int(tok)))
        if tok == "I" and "I" not in self.ring:
            return self.ring.const(I)
        if tok in self.ring:
            return self.ring.var(tok)
        raise ParseError(f"unknown variable {tok!r}")


def parse_polynomial(text: str, ring: VarTable) -> Polynomial:
    return _Parser(text, ring).parse()
