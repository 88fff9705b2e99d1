"""Surface syntax shared by the CLI and the tests.

Grammar (``*`` is always multiplication; the involution is written ``star(...)``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := INT | '-' INT | '(' ['-'] INT ['/' INT] ')'
    atom   := INT | NAME | '(' expr ')' | 'star' '(' expr ')'

``q`` and ``i`` are scalar names; ``q`` accepts half-integer exponents.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .coeff import I, Q, Scalar


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownGeneratorError(ParseError):
    def __init__(self, name: str, position: int, known, text: str = ""):
        self.name = name
        close = difflib.get_close_matches(name, sorted(known), n=1)
        self.suggestion = close[0] if close else None
        hint = f" (did you mean {self.suggestion!r}?)" if self.suggestion else ""
        super().__init__(f"unknown generator {name!r}{hint}", position, text)


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class Name:
    id: str
    position: int = 0


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node), sign in {+1, -1}


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Quotient:
    numerator: object
    denominator: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: Fraction


@dataclass(frozen=True)
class Star:
    operand: object


@dataclass(frozen=True)
class Expression:
    """A parsed expression tagged with the presentation it refers to."""

    tree: object
    presentation: str | None = None


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"expected {value!r}", tok[2], self.text)
        return tok

    def error(self, message):
        raise ParseError(message, self.peek()[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        terms = [(1, self.term())]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = 1 if self.take()[1] == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        node = self.unary()
        factors = [node]
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                factors.append(rhs)
            else:
                left = factors[0] if len(factors) == 1 else Product(tuple(factors))
                factors = [Quotient(left, rhs)]
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return Power(base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        tok = self.peek()
        if tok[0] == "int":
            return Fraction(int(self.take()[1]))
        if tok[1] == "-" and tok[0] == "op":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("expected integer exponent", tok[2], self.text)
            return -Fraction(int(tok[1]))
        if tok[1] == "(" and tok[0] == "op":
            self.take()
            sign = 1
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("expected integer exponent", tok[2], self.text)
            value = Fraction(int(tok[1]))
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                tok = self.take()
                if tok[0] != "int" or int(tok[1]) == 0:
                    raise ParseError("expected nonzero integer denominator", tok[2], self.text)
                value /= int(tok[1])
            self.expect(")")
            return sign * value
        self.error("expected exponent")

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return Number(int(value))
        if kind == "name":
            if value == "star" and self.peek()[1] == "(" and self.peek()[0] == "op":
                self.take()
                inner = self.expr()
                self.expect(")")
                return Star(inner)
            return Name(value, pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {value!r}", pos, self.text)


def parse_tree(text: str):
    return _Parser(text).parse()


SCALAR_NAMES = {"q": Q, "i": I}


def evaluate(
    tree,
    leaves: Mapping[str, object],
    *,
    one,
    star: Callable[[object], object],
    inverse: Mapping[str, object] | None = None,
    text: str = "",
):
    """Evaluate a parse tree.

    ``leaves`` maps generator names to values; ``one`` is the unit of the
    target algebra; ``inverse`` gives the value of ``name^-1`` for invertible
    generators.
    """
    inverse = inverse or {}
    known = set(leaves) | set(SCALAR_NAMES)

    def ev(node):
        if isinstance(node, Number):
            return Scalar.coerce(node.value)
        if isinstance(node, Name):
            if node.id in SCALAR_NAMES:
                return SCALAR_NAMES[node.id]
            if node.id not in leaves:
                raise UnknownGeneratorError(node.id, node.position, known, text)
            return leaves[node.id]
        if isinstance(node, Sum):
            total = None
            for sign, sub in node.terms:
                value = ev(sub)
                value = value if sign > 0 else -value
                total = value if total is None else _add(total, value, one)
            return total
        if isinstance(node, Product):
            result = ev(node.factors[0])
            for sub in node.factors[1:]:
                result = result * ev(sub)
            return result
        if isinstance(node, Quotient):
            den = ev(node.denominator)
            if not isinstance(den, Scalar):
                raise ParseError("can only divide by scalars", _position(node.denominator), text)
            return ev(node.numerator) * den.inverse()
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Star):
            return star(ev(node.operand))
        if isinstance(node, Power):
            return _power(node, ev)
        raise TypeError(f"unknown node {node!r}")

    def _power(node, ev):
        exp = node.exponent
        base = node.base
        if isinstance(base, Name) and base.id == "q":
            doubled = 2 * exp
            if doubled.denominator != 1:
                raise ParseError("q admits only half-integer exponents", base.position, text)
            return Scalar.s_power(int(doubled))
        if exp.denominator != 1:
            raise ParseError("fractional exponent", _position(base), text)
        n = int(exp)
        if n < 0:
            if isinstance(base, Name) and base.id in inverse:
                value, n = inverse[base.id], -n
            else:
                value = ev(base)
                if not isinstance(value, Scalar):
                    raise ParseError("negative power of a non-invertible element", _position(base), text)
                value, n = value.inverse(), -n
        else:
            value = ev(base)
        result = one if not isinstance(value, Scalar) else Scalar.coerce(1)
        for _ in range(n):
            result = result * value
        return result

    return ev(tree)


def _add(x, y, one):
    if isinstance(x, Scalar) and not isinstance(y, Scalar):
        x = one * x
    elif isinstance(y, Scalar) and not isinstance(x, Scalar):
        y = one * y
    return x + y


def _position(node) -> int:
    if isinstance(node, Name):
        return node.position
    for attr in ("base", "operand", "numerator"):
        if hasattr(node, attr):
            return _position(getattr(node, attr))
    if isinstance(node, (Sum,)):
        return _position(node.terms[0][1])
    if isinstance(node, Product):
        return _position(node.factors[0])
    return 0


def parse_scalar(text: str) -> Scalar:
    tree = parse_tree(text)
    value = evaluate(tree, {}, one=Scalar.coerce(1), star=lambda x: x.conjugate(), text=text)
    return Scalar.coerce(value)
