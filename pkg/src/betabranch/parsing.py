"""Text formats: polynomials, rational expressions in the base, and words.

Expressions use ``+ - * / ^`` with parentheses and implicit multiplication
(``2x^2``, ``3(q+1)``).  Errors carry line and column numbers.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif sym is not None:
            if sym not in "+-*/^()=":
                line, col = _position(text, start)
                raise ParseError(f"unexpected character {sym!r}", text, line, col)
            tokens.append(("op", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser producing nested tuples:
    ``("num", Fraction)``, ``("var", name)``, ``(op, lhs, rhs)``, ``("neg", e)``,
    ``("pow", base, int)``."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, message, tok=None):
        tok = tok or self.tokens[self.i]
        line, col = _position(self.text, tok[2])
        raise ParseError(message, self.text, line, col)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym):
        tok = self.take()
        if tok[1] != sym:
            self.error(f"expected {sym!r}", tok)
        return tok

    def parse(self, allow_relation=False):
        lhs = self.expr()
        if allow_relation and self.peek()[1] == "=":
            self.take()
            rhs = self.expr()
            lhs = ("-", lhs, rhs)
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return lhs

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def _starts_factor(self, tok):
        return tok[0] in ("num", "name") or tok[1] == "("

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("*", "/"):
                self.take()
                node = (tok[1], node, self.unary())
            elif self._starts_factor(tok):
                node = ("*", node, self.power())
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return ("neg", inner) if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num" or "." in tok[1]:
                self.error("exponent must be an integer literal", tok)
            base = ("pow", base, -int(tok[1]) if neg else int(tok[1]))
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return ("num", Fraction(tok[1]))
        if tok[0] == "name":
            return ("var", tok[1])
        if tok[1] == "(":
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected a number, a variable or '('", tok)


def parse_expression(text: str, allow_relation: bool = False):
    return _Parser(text).parse(allow_relation)


def evaluate(node, variables: dict, const):
    """Evaluate a parsed expression; ``const`` lifts a ``Fraction`` into the value domain."""
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "var":
        try:
            return variables[node[1]]
        except KeyError:
            raise ParseError(f"unknown variable {node[1]!r}") from None
    if kind == "neg":
        return -evaluate(node[1], variables, const)
    if kind == "pow":
        return evaluate(node[1], variables, const) ** node[2]
    a = evaluate(node[1], variables, const)
    b = evaluate(node[2], variables, const)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    if kind == "/":
        return a / b
    raise AssertionError(kind)


class _QPoly:
    """Minimal rational polynomial value type for parsing defining polynomials."""

    __slots__ = ("c",)

    def __init__(self, c):
        from .algebraic.poly import to_q

        self.c = to_q(c)

    def __add__(self, o):
        from .algebraic.poly import padd

        return _QPoly(padd(self.c, o.c))

    def __sub__(self, o):
        from .algebraic.poly import psub

        return _QPoly(psub(self.c, o.c))

    def __neg__(self):
        return _QPoly(tuple(-x for x in self.c))

    def __mul__(self, o):
        from .algebraic.poly import pmul

        return _QPoly(pmul(self.c, o.c))

    def __truediv__(self, o):
        if len(o.c) != 1:
            raise ParseError("polynomials may only be divided by constants")
        return _QPoly(tuple(x / o.c[0] for x in self.c))

    def __pow__(self, n):
        if n < 0:
            raise ParseError("negative exponents are not allowed in polynomials")
        out = _QPoly((1,))
        for _ in range(n):
            out = out * self
        return out


def parse_polynomial(text: str):
    """Parse ``"x^6-x^4-x^3-2x^2-x-1"``, a relation ``"x^6=x^4+x^3+2x^2+x+1"``,
    or an ascending coefficient list ``"[-1,-1,-2,-1,-1,0,1]"``.

    Returns a primitive ``IntPolynomial`` (content removed, positive leading
    coefficient).
    """
    from .algebraic.poly import IntPolynomial, primitive

    s = text.strip()
    if s.startswith("["):
        try:
            coeffs = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad coefficient list: {exc.msg}", text, exc.lineno, exc.colno) from None
        if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
            raise ParseError("coefficient list must contain integers only", text)
        return IntPolynomial(tuple(coeffs)).primitive()
    node = parse_expression(s, allow_relation=True)
    names = _variables(node)
    if len(names) > 1:
        raise ParseError(f"polynomial uses more than one variable: {sorted(names)}", text)
    var = names.pop() if names else "x"
    value = evaluate(node, {var: _QPoly((0, 1))}, lambda f: _QPoly((f,)))
    if not value.c:
        raise ParseError("polynomial is identically zero", text)
    return IntPolynomial(primitive(value.c))


def _variables(node) -> set:
    if node[0] == "var":
        return {node[1]}
    if node[0] == "num":
        return set()
    out = set()
    for child in node[1:]:
        if isinstance(child, tuple):
            out |= _variables(child)
    return out


def parse_field_expression(text: str, field):
    """Evaluate a rational expression in ``q`` inside ``field``, e.g.
    ``"(q+q^2)/(q^4-1)"``; divisions are exact field divisions."""
    node = parse_expression(text)
    return evaluate(node, {"q": field.gen}, lambda f: field(f))


def parse_word(text: str):
    """Parse ``"PRE|PER"`` into an ``EventuallyPeriodicWord``."""
    from .expansions import EventuallyPeriodicWord

    s = text.strip()
    if s.count("|") != 1:
        raise ParseError("word must have the form PRE|PER", text, 1, 1)
    pre, per = s.split("|")
    for offset, ch in enumerate(s):
        if ch not in "01|":
            raise ParseError(f"word digits must be 0 or 1, got {ch!r}", text, 1, offset + 1)
    if not per:
        raise ParseError("finite word given where an infinite word is required", text, 1, len(s))
    return EventuallyPeriodicWord(pre, per)


def parse_point(text: str, base):
    """Point grammar: ``word:PRE|PER`` or ``fe:<expression in q>``."""
    from .expansions import eval_word

    s = text.strip()
    if s.startswith("word:"):
        return eval_word(base, parse_word(s[5:]))
    if s.startswith("fe:"):
        return parse_field_expression(s[3:], base.field)
    raise ParseError("point must start with 'word:' or 'fe:'", text, 1, 1)
