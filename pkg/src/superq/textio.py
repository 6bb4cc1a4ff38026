"""Text form of elements.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := NUMBER | NAME ['^' INT] | '(' expr ')'

NUMBER is an integer or a fraction ``p/q``; NAME is a generator name of the
target algebra (product supergroups use ``<i>.<name>``). Products are taken
in the written order, so ``theta2*theta1`` parses to ``-theta1*theta2``.
Formatting writes terms in the canonical monomial order with odd factors
sorted, e.g. ``3*x^2*theta1*theta2 - 1/2*theta1``.
"""

from __future__ import annotations

import re

from .algebra import Algebra, Element, TensorAlgebra, format_element, tensor

_TOKEN = re.compile(r"\s*(?:(?P<name>(?:\d+\.)?[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+(?:/\d+)?)"
                    r"|(?P<op>[-+*^()]))")


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list:
    pos = 0
    out = []
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(text, bad, "unexpected character")
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", text_len))
    return out


class _Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.text = text
        self.alg = algebra
        self.toks = _tokenize(text)
        self.i = 0
        self.names = set(algebra.generator_names)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(self.text, self.peek()[2], msg)

    def parse(self) -> Element:
        e = self.expr()
        if self.peek()[0] != "end":
            self.error("trailing input")
        return e

    def expr(self) -> Element:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Element:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Element:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return self.alg.scalar(val)
        if kind == "name":
            self.take()
            if val not in self.names:
                raise ParseError(self.text, pos, f"unknown generator {val!r}")
            base = self.alg.generator(val)
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                k, v, p = self.take()
                if k != "num" or "/" in v:
                    raise ParseError(self.text, p, "exponent must be a nonnegative integer")
                return base ** int(v)
            return base
        if kind == "op" and val == "(":
            self.take()
            e = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return e
        self.error("expected a number, generator or '('")


def parse_element(text: str, algebra: Algebra) -> Element:
    """Parse ``text`` as an element of ``algebra``."""
    if not isinstance(text, str):
        text = str(text)
    return _Parser(text, algebra).parse()


def parse_tensor(pairs, target: TensorAlgebra) -> Element:
    """Sum of left⊗right over ``pairs`` of strings (one algebra per leg)."""
    acc = target.zero()
    for pair in pairs:
        if len(pair) != len(target.factors):
            raise ValueError(f"expected {len(target.factors)} legs, got {pair!r}")
        legs = [parse_element(s, f) for s, f in zip(pair, target.factors)]
        acc = acc + tensor(legs, target)
    return acc


def format_tensor_terms(e: Element) -> list:
    """Tensor element as a list of {"coef", "legs"} records in canonical order."""
    alg = e.algebra
    return [{"coef": str(c), "legs": [f.format_key(k) for f, k in zip(alg.factors, key)]}
            for key, c in e.sorted_terms()]


def format_any(e: Element) -> str:
    return format_element(e)
