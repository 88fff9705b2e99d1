"""Hopf structure of Fun_q(SU(2)) and U_q(su(2)): coproduct, counit, antipode.

Generator tables hold exactly the formulas stated for ``a, b`` and ``k, e``;
the starred generators follow from ``(* x *) Delta = Delta *`` and
``eps * = conj eps``, and ``k^-1`` from ``k`` being group-like.  Everything is
extended multiplicatively (antimultiplicatively for the antipode) and memoized
per word.
"""

from __future__ import annotations

import functools
from itertools import product as _cartesian
from typing import Mapping, Sequence

from .coeff import ONE, ZERO, Scalar
from .ncpoly import Element, Presentation, Word, funq_algebra, uq_algebra


class TensorElement:
    """Finite sum of pure tensors ``w_1 (x) ... (x) w_n`` of normal words."""

    __slots__ = ("factors", "terms", "_hash")

    def __init__(self, factors: Sequence[Presentation], terms: Mapping[tuple, Scalar]):
        self.factors = tuple(factors)
        self.terms = {k: v for k, v in terms.items() if v}
        self._hash = None

    @property
    def arity(self) -> int:
        return len(self.factors)

    @classmethod
    def pure(cls, *elements: Element) -> TensorElement:
        terms: dict = {}
        for parts in _cartesian(*(e.terms.items() for e in elements)):
            key = tuple(w for w, _ in parts)
            c = ONE
            for _, v in parts:
                c = c * v
            terms[key] = terms.get(key, ZERO) + c
        return cls([e.presentation for e in elements], terms)

    @classmethod
    def from_element(cls, x: Element) -> TensorElement:
        return cls([x.presentation], {(w,): c for w, c in x.terms.items()})

    def as_element(self) -> Element:
        if self.arity != 1:
            raise ValueError("only arity-1 tensors are elements")
        return Element(self.factors[0], {k[0]: c for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorElement(self.factors, out)

    def __neg__(self):
        return TensorElement(self.factors, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self._product(other)
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return TensorElement(self.factors, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * c

    def _product(self, other: TensorElement) -> TensorElement:
        if self.arity != other.arity:
            raise ValueError("tensor arities differ")
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                legs = [
                    P._times_word(w1, w2).items() for P, w1, w2 in zip(self.factors, k1, k2)
                ]
                for parts in _cartesian(*legs):
                    key = tuple(w for w, _ in parts)
                    d = c
                    for _, v in parts:
                        d = d * v
                    out[key] = out.get(key, ZERO) + d
        return TensorElement(self.factors, out)

    def __eq__(self, other):
        if isinstance(other, Element):
            other = TensorElement.from_element(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.factors == other.factors and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def swap(self) -> TensorElement:
        """Reverse the order of the tensor factors (the coopposite flip)."""
        return TensorElement(self.factors[::-1], {k[::-1]: c for k, c in self.terms.items()})

    def star(self) -> TensorElement:
        """``* (x) ... (x) *``, conjugating coefficients."""
        out: dict = {}
        for key, c in self.terms.items():
            legs = [P.normal_form_word(P.star_word(w)).items() for P, w in zip(self.factors, key)]
            cc = c.conjugate()
            for parts in _cartesian(*legs):
                k = tuple(w for w, _ in parts)
                d = cc
                for _, v in parts:
                    d = d * v
                out[k] = out.get(k, ZERO) + d
        return TensorElement(self.factors, out)

    def multiply(self) -> Element:
        """The algebra product ``m(x (x) y) = x y`` (all factors in one presentation)."""
        P = self.factors[0]
        if any(f is not P for f in self.factors):
            raise ValueError("multiply needs a single presentation")
        out: dict = {}
        for key, c in self.terms.items():
            current = {(): c}
            for w in key:
                nxt: dict = {}
                for u, d in current.items():
                    for v, e in P._times_word(u, w).items():
                        nxt[v] = nxt.get(v, ZERO) + d * e
                current = nxt
            for v, d in current.items():
                out[v] = out.get(v, ZERO) + d
        return Element(P, {w: c for w, c in out.items() if c})

    def apply(self, *maps) -> TensorElement:
        """Apply one linear map per factor; each map sends an Element to an Element or Scalar."""
        result: dict = {}
        out_factors = None
        for key, c in self.terms.items():
            values = []
            for P, w, fn in zip(self.factors, key, maps):
                v = fn(Element(P, {w: ONE}))
                if isinstance(v, Element):
                    values.append(v)
                else:
                    values.append(Scalar.coerce(v))
            elements = [v for v in values if isinstance(v, Element)]
            coeff = c
            for v in values:
                if isinstance(v, Scalar):
                    coeff = coeff * v
            if not coeff:
                continue
            if out_factors is None:
                out_factors = [e.presentation for e in elements]
            piece = TensorElement.pure(*elements) if elements else None
            if piece is None:
                result[()] = result.get((), ZERO) + coeff
                continue
            for k, v in piece.terms.items():
                result[k] = result.get(k, ZERO) + coeff * v
        return TensorElement(out_factors or [], result)

    def sorted_terms(self):
        keys = [P.order_key for P in self.factors]
        return sorted(self.terms.items(), key=lambda item: tuple(f(w) for f, w in zip(keys, item[0])))

    def _render(self, pretty: bool, sep: str) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key, c in self.sorted_terms():
            body = sep.join(P.word_str(w, pretty=pretty) for P, w in zip(self.factors, key))
            negative = False
            if c.is_single_term():
                text = str(c)
                if text.startswith("-"):
                    negative, text = True, text[1:]
            else:
                text = f"({c})"
            if text != "1":
                body = f"{text}*({body})" if not pretty else f"{text} ({body})"
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self._render(False, " (x) ")

    def pretty(self, unicode: bool = True) -> str:
        return self._render(True, " ⊗ " if unicode else " (x) ")

    def __repr__(self):
        return f"TensorElement({str(self)!r})"


class HopfTables:
    """Coproduct, counit and antipode of a presentation, given on generators.

    ``coproduct`` maps a generator name to a list of ``(coefficient, left,
    right)`` strings, ``counit`` to a coefficient string, ``antipode`` to an
    expression.  Missing starred or inverse generators are derived.
    """

    def __init__(
        self,
        P: Presentation,
        coproduct: Mapping[str, Sequence[tuple[str, str, str]]],
        counit: Mapping[str, str],
        antipode: Mapping[str, str],
    ):
        self.presentation = P
        self.coproduct_table: dict[int, TensorElement] = {}
        self.counit_table: dict[int, Scalar] = {}
        self.antipode_table: dict[int, Element] = {}
        for name, terms in coproduct.items():
            t = TensorElement([P, P], {})
            for coeff, left, right in terms:
                t = t + TensorElement.pure(P.parse(left), P.parse(right)) * Scalar.parse(coeff)
            self.coproduct_table[P.index[name]] = t
        for name, value in counit.items():
            self.counit_table[P.index[name]] = Scalar.parse(value)
        for name, value in antipode.items():
            self.antipode_table[P.index[name]] = P.parse(value)

        for g in list(self.coproduct_table):
            g_star = P.star_index[g]
            if g_star not in self.coproduct_table:
                self.coproduct_table[g_star] = self.coproduct_table[g].star()
            if g_star not in self.counit_table and g in self.counit_table:
                self.counit_table[g_star] = self.counit_table[g].conjugate()
        for g, ginv in P.inverses.items():
            if ginv in self.coproduct_table:
                continue
            delta = self.coproduct_table[g]
            if delta != TensorElement.pure(P.gen(P.generators[g]), P.gen(P.generators[g])):
                raise ValueError("only group-like generators may have derived inverses")
            inv = P.gen(P.generators[ginv])
            self.coproduct_table[ginv] = TensorElement.pure(inv, inv)
            self.counit_table[ginv] = self.counit_table[g].inverse()
            if ginv not in self.antipode_table:
                image = self.antipode_table[g]
                (word, c), = image.terms.items()
                if len(word) != 1 or word[0] not in P.inverses:
                    raise ValueError("cannot derive antipode of an inverse generator")
                self.antipode_table[ginv] = P.gen(P.generators[P.inverses[word[0]]]) * c.inverse()
        missing = set(range(len(P.generators))) - set(self.antipode_table)
        if missing or len(self.coproduct_table) != len(P.generators):
            raise ValueError(f"{P.name}: incomplete Hopf tables")

        # S scales or permutes generators, so the inverse table is closed form
        self.antipode_inv_table: dict[int, Element] = {}
        for g, image in self.antipode_table.items():
            if len(image.terms) != 1:
                raise ValueError("antipode must send generators to multiples of generators")
            (word, c), = image.terms.items()
            if len(word) != 1:
                raise ValueError("antipode must send generators to multiples of generators")
            self.antipode_inv_table[word[0]] = Element(P, {(g,): c.inverse()})

        self._delta: dict = {}
        self._iterated: dict = {}
        self._counit: dict = {}
        self._antipode: dict = {}
        self._antipode_inv: dict = {}

    # words ---------------------------------------------------------------

    def coproduct_word(self, word: Word) -> TensorElement:
        cached = self._delta.get(word)
        if cached is None:
            P = self.presentation
            if not word:
                cached = TensorElement([P, P], {((), ()): ONE})
            elif len(word) == 1:
                cached = self.coproduct_table[word[0]]
            else:
                cached = self.coproduct_word(word[:-1]) * self.coproduct_table[word[-1]]
            self._delta[word] = cached
        return cached

    def iterated_word(self, word: Word, n: int) -> dict:
        """``Delta^(n-1)`` of a normal word as ``{(w_1, ..., w_n): coeff}``."""
        if n == 1:
            return {(word,): ONE}
        key = (word, n)
        cached = self._iterated.get(key)
        if cached is None:
            cached = {}
            for (left, right), c in self.coproduct_word(word).terms.items():
                for parts, d in self.iterated_word(left, n - 1).items():
                    k = parts + (right,)
                    cached[k] = cached.get(k, ZERO) + c * d
            cached = {k: v for k, v in cached.items() if v}
            self._iterated[key] = cached
        return cached

    def counit_word(self, word: Word) -> Scalar:
        cached = self._counit.get(word)
        if cached is None:
            cached = ONE
            for g in word:
                cached = cached * self.counit_table[g]
            self._counit[word] = cached
        return cached

    def _anti(self, word: Word, table, cache) -> Element:
        cached = cache.get(word)
        if cached is None:
            P = self.presentation
            cached = P.one()
            for g in reversed(word):
                cached = cached * table[g]
            cache[word] = cached
        return cached

    def antipode_word(self, word: Word) -> Element:
        return self._anti(word, self.antipode_table, self._antipode)

    def antipode_inv_word(self, word: Word) -> Element:
        return self._anti(word, self.antipode_inv_table, self._antipode_inv)


def _tables(x) -> HopfTables:
    tables = x.presentation.hopf
    if tables is None:
        raise ValueError(f"{x.presentation.name} carries no Hopf structure")
    return tables


def coproduct(x: Element) -> TensorElement:
    """``Delta`` extended as an algebra homomorphism."""
    tables = _tables(x)
    P = x.presentation
    result = TensorElement([P, P], {})
    for w, c in x.terms.items():
        result = result + tables.coproduct_word(w) * c
    return result


def coproduct_cop(x: Element) -> TensorElement:
    """``Delta^cop``: the coproduct with its tensor factors swapped."""
    return coproduct(x).swap()


def iterated_coproduct(x: Element, n: int) -> TensorElement:
    """``(Delta (x) id ... ) ... Delta`` with ``n`` output factors; ``n = 1`` gives ``x``."""
    if n < 1:
        raise ValueError("iterated_coproduct needs n >= 1")
    tables = _tables(x)
    out: dict = {}
    for w, c in x.terms.items():
        for k, d in tables.iterated_word(w, n).items():
            out[k] = out.get(k, ZERO) + c * d
    return TensorElement([x.presentation] * n, out)


def counit(x: Element) -> Scalar:
    tables = _tables(x)
    total = ZERO
    for w, c in x.terms.items():
        total = total + c * tables.counit_word(w)
    return total


def antipode(x: Element) -> Element:
    tables = _tables(x)
    result = x.presentation.zero()
    for w, c in x.terms.items():
        result = result + tables.antipode_word(w) * c
    return result


def antipode_inv(x: Element) -> Element:
    """``S^-1``, which is also the antipode of the coopposite algebra."""
    tables = _tables(x)
    result = x.presentation.zero()
    for w, c in x.terms.items():
        result = result + tables.antipode_inv_word(w) * c
    return result


FUNQ_COPRODUCT = {
    "a": [("1", "a", "a"), ("-q", "b", "bs")],
    "b": [("1", "b", "as"), ("1", "a", "b")],
}
FUNQ_COUNIT = {"a": "1", "b": "0"}
FUNQ_ANTIPODE = {"a": "as", "as": "a", "b": "-q*b", "bs": "-q^-1*bs"}

UQ_COPRODUCT = {
    "k": [("1", "k", "k")],
    "e": [("1", "e", "k"), ("1", "kinv", "e")],
}
UQ_COUNIT = {"k": "1", "e": "0"}
UQ_ANTIPODE = {"e": "-q^-1*e", "es": "-q*es", "k": "kinv"}


def build_funq(rule_overrides=None, *, check: bool = True) -> Presentation:
    P = funq_algebra(rule_overrides, check=check)
    P.hopf = HopfTables(P, FUNQ_COPRODUCT, FUNQ_COUNIT, FUNQ_ANTIPODE)
    return P


def build_uq(rule_overrides=None, *, check: bool = True) -> Presentation:
    P = uq_algebra(rule_overrides, check=check)
    P.hopf = HopfTables(P, UQ_COPRODUCT, UQ_COUNIT, UQ_ANTIPODE)
    return P


@functools.cache
def funq() -> Presentation:
    """The shared Fun_q(SU(2)) instance."""
    return build_funq()


@functools.cache
def uq() -> Presentation:
    """The shared U_q(su(2)) instance."""
    return build_uq()
