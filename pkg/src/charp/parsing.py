"""Text forms: polynomials, field elements, multi-indices, points.

Polynomial grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT | IDENT | '(' expr ')'

Coordinates of rational points additionally accept ``/`` at term level, e.g.
``x=(v+1)/v``.  The printer emits the canonical form ``x^2+v*y^2``: terms in
descending ring order, coefficients as residues in ``[1, p)``, ``1`` omitted.
"""

from __future__ import annotations

import re
from typing import Dict, List

from .errors import ParseError, UnknownIdentifier
from .polyring import MultiIndex, Polynomial, RingContext, Role

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*^/()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over the token list; values are ``(num, den)`` pairs."""

    def __init__(self, text: str, ring: RingContext, division: bool, geometric: bool):
        self.text = text
        self.ring = ring
        self.division = division
        self.geometric = geometric
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2], tok[2] + max(len(tok[1]), 1))

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        num, den = self.term()
        if sign < 0:
            num = -num
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            if den == d2:
                num = num + n2
            else:
                num, den = num * d2 + n2 * den, den * d2
        return num, den

    def term(self):
        num, den = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            n2, d2 = self.factor()
            if tok[1] == "*":
                num, den = num * n2, den * d2
            else:
                if not self.division:
                    raise ParseError("division is not allowed in polynomials", self.text, tok[2])
                if not n2.terms:
                    raise ParseError("division by zero", self.text, tok[2])
                num, den = num * d2, den * n2
        return num, den

    def factor(self):
        num, den = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("expected an integer exponent", tok)
            e = int(tok[1])
            num, den = num ** e, den ** e
        return num, den

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        ring = self.ring
        if kind == "int":
            return ring.constant(int(value)), ring.one()
        if kind == "ident":
            if value not in ring.names:
                raise UnknownIdentifier(value, self.text, pos)
            if not self.geometric and ring.element(value).role is Role.GEOMETRIC_VARIABLE:
                raise ParseError(
                    f"{value!r} is a geometric variable; only base parameters are allowed here",
                    self.text, pos, pos + len(value))
            return ring.gen(value), ring.one()
        if kind == "op" and value == "(":
            inner = self.expr()
            if self.take()[1] != ")":
                raise self.error("expected ')'", self.tokens[self.i - 1])
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {value!r}", tok)


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    num, _ = _Parser(text, ring, division=False, geometric=True).parse()
    return num


def parse_field_element(text: str, ring: RingContext):
    """An element of ``F_p(v)``, e.g. ``(v+1)/v``."""
    from .fields import Fraction

    parser = _Parser(text, ring, division=True, geometric=False)
    num, den = parser.parse()
    if not den.terms:
        raise ParseError("denominator vanishes identically", text, 0)
    return Fraction(num, den)


def _split_top(text: str, sep: str) -> List[tuple]:
    """Split on ``sep`` outside parentheses; yields ``(chunk, offset)``."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_ideal(text: str, ring: RingContext) -> List[Polynomial]:
    """Generators separated by ``;`` or newlines."""
    gens = []
    for line in text.replace(";", "\n").splitlines():
        if line.strip():
            gens.append(parse_poly(line, ring))
    return gens


def parse_point(text: str, ring: RingContext) -> Dict[str, object]:
    """``x=0,y=(v+1)/v`` to a ``{name: Fraction}`` mapping."""
    point = {}
    for chunk, offset in _split_top(text, ","):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise ParseError("expected name=value", text, offset)
        name, value = chunk.split("=", 1)
        name = name.strip()
        if name not in ring.names:
            raise UnknownIdentifier(name, text, offset + chunk.index(name) if name else offset)
        if name in point:
            raise ParseError(f"{name!r} assigned twice", text, offset)
        try:
            point[name] = parse_field_element(value, ring)
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" (line", 1)[0], text,
                             offset + len(name) + 1 + exc.pos) from None
    return point


def parse_multi_index(text: str, ring: RingContext) -> MultiIndex:
    """``v:1,x:2`` to a dense exponent tuple; an empty string is the zero index."""
    e = [0] * ring.nbasis
    for chunk, offset in _split_top(text, ","):
        if not chunk.strip():
            continue
        name, sep, k = chunk.partition(":")
        name = name.strip()
        if name not in ring.names:
            raise UnknownIdentifier(name, text, offset)
        try:
            k = int(k) if sep else 1
        except ValueError:
            raise ParseError("exponent must be an integer", text, offset) from None
        if k < 0:
            raise ParseError("exponent must be nonnegative", text, offset)
        e[ring.position(name)] += k
    return tuple(e)


def format_multi_index(beta: MultiIndex, ring: RingContext) -> str:
    return ",".join(f"{ring.names[i]}:{k}" for i, k in enumerate(beta) if k)


def format_monomial(e: MultiIndex, ring: RingContext) -> str:
    parts = []
    for name, k in zip(ring.names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(f: Polynomial, order=None) -> str:
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms(order):
        mono = format_monomial(e, f.ring)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return "+".join(out)
