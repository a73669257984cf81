"""A small expression language for entering algebra elements.

Grammar (precedence high to low: ^, *, unary -, binary +/-):

    expr    := term (('+' | '-') term)*
    term    := '-' term | product
    product := power ('*' power)*
    power   := atom ('^' INT)*
    atom    := SCALAR | NAME | '(' expr ')'

SCALAR is the shared literal syntax (integer or a/b); NAME is a basis name.
`*` is the algebra product and is never commuted; `^` takes nonnegative
integer exponents only. Expressions are evaluated, never simplified.
"""

from __future__ import annotations

import re

from .algebra import Algebra, AlgebraElement
from .errors import ExpressionSyntaxError, UnknownBasisName

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<scalar>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            raise ExpressionSyntaxError(f"unexpected character {text[at]!r}", at)
        if match.lastgroup == "scalar":
            tokens.append(("scalar", match.group("scalar"), match.start("scalar")))
        elif match.lastgroup == "name":
            tokens.append(("name", match.group("name"), match.start("name")))
        else:
            tokens.append(("op", match.group("op"), match.start("op")))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.text = text
        self.algebra = algebra
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.next()
        if tok is None or tok[0] != "op" or tok[1] != op:
            at = tok[2] if tok else len(self.text)
            raise ExpressionSyntaxError(f"expected {op!r}", at)

    def parse(self) -> AlgebraElement:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExpressionSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self) -> AlgebraElement:
        value = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return value
            self.next()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs

    def term(self) -> AlgebraElement:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            self.next()
            return -self.term()
        return self.product()

    def product(self) -> AlgebraElement:
        value = self.power()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] != "*":
                return value
            self.next()
            value = value * self.power()

    def power(self) -> AlgebraElement:
        value = self.atom()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] != "^":
                return value
            self.next()
            exp = self.next()
            if exp is None or exp[0] != "scalar" or "/" in exp[1]:
                at = exp[2] if exp else len(self.text)
                raise ExpressionSyntaxError("exponent must be a nonnegative integer", at)
            value = value ** int(exp[1])

    def atom(self) -> AlgebraElement:
        tok = self.next()
        if tok is None:
            raise ExpressionSyntaxError("unexpected end of expression", len(self.text))
        kind, value, at = tok
        if kind == "scalar":
            return self.algebra.scalar_element(self.algebra.field.coerce(value))
        if kind == "name":
            try:
                index = self.algebra.basis_names.index(value)
            except ValueError:
                raise UnknownBasisName(value, at) from None
            return self.algebra.basis_element(index)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExpressionSyntaxError(f"unexpected token {value!r}", at)


def parse_element(text: str, algebra: Algebra) -> AlgebraElement:
    """Evaluate an element expression over the algebra's basis names."""
    return _Parser(text, algebra).parse()
