"""Noncommutative polynomials over Q(i)(s) reduced to a PBW normal form.

A :class:`Presentation` is built from defining relations written in the usual
notation (e.g. ``"b*a - q*a*b"``).  The rewrite system is completed by
adding the starred relations and, for invertible generators, the relations
conjugated by the inverse.  Every relation is oriented towards its smallest word
under a weighted degree-lexicographic order, and local confluence is checked on
all overlaps before the presentation is used.

All left-hand sides have length two, so the product of a normal word with a
single generator only ever needs to rewrite at the junction.  Products are
computed that way and memoized per presentation.
"""

from __future__ import annotations

import random
from itertools import product as _cartesian
from typing import Iterable, Iterator, Mapping, Sequence

from .coeff import ONE, ZERO, Scalar
from .expr import evaluate, parse_tree

Word = tuple  # of generator indices


class ConfluenceError(ValueError):
    """An overlap of two rewrite rules does not resolve."""

    def __init__(self, presentation: str, failures: list):
        self.failures = failures
        overlap, left, right = failures[0]
        super().__init__(
            f"{presentation}: overlap {overlap} resolves to {left} and to {right}"
            + (f" ({len(failures) - 1} more)" if len(failures) > 1 else "")
        )


class _Free:
    """Element of the free algebra, used only while deriving relations."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar]):
        self.terms = {w: c for w, c in terms.items() if c}

    def _combine(self, other, sign):
        if isinstance(other, Scalar):
            other = _Free({(): other})
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + (c if sign > 0 else -c)
        return _Free(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return _Free({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return _Free({w: c * other for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return _Free(out)

    def __rmul__(self, other):
        return self * Scalar.coerce(other)


class Presentation:
    """A finitely presented *-algebra with a confluent length-two rewrite system.

    ``generators`` are the ASCII names used by the parser (``"as"`` for a*),
    ``pretty`` the display names.  ``star`` maps each generator to its adjoint.
    ``inverses`` pairs mutually inverse generators.  ``heavy`` generators count
    extra in the word order (used to orient ``a* a -> 1 - q^2 b b*``).
    ``rule_overrides`` replaces individual oriented rules after derivation; it
    exists so that verification runs can be fed a deliberately broken system.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        pretty: Sequence[str],
        star: Mapping[str, str],
        relations: Sequence[str],
        *,
        heavy: Iterable[str] = (),
        inverses: Mapping[str, str] | None = None,
        aliases: Mapping[str, str] | None = None,
        rule_overrides: Mapping[tuple[str, str], str] | None = None,
        check: bool = True,
    ):
        self.name = name
        self.generators = tuple(generators)
        self.pretty_names = tuple(pretty)
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.star_index = tuple(self.index[star[g]] for g in self.generators)
        self.inverses = {self.index[g]: self.index[h] for g, h in (inverses or {}).items()}
        self.heavy = frozenset(self.index[g] for g in heavy)
        self.aliases = dict(aliases or {})
        self.relations = tuple(relations)
        self.hopf = None  # HopfTables, attached by qlorentz.hopf

        self.rules = self.derive_rewrite_rules()
        for (x, y), rhs in (rule_overrides or {}).items():
            key = (self.index[x], self.index[y])
            if key not in self.rules:
                raise KeyError(f"no rule with left-hand side {x} {y}")
            self.rules[key] = self._check_oriented(key, self._free(rhs).terms)

        self._prod_letter: dict = {}
        self._prod_word: dict = {}
        self._normal_cache: dict = {}
        self._leaves = None
        self.overlap_failures = self.check_local_confluence()
        if check and self.overlap_failures:
            raise ConfluenceError(self.name, self.overlap_failures)

    # words and order ---------------------------------------------------

    def order_key(self, word: Word):
        return (len(word), sum(1 for g in word if g in self.heavy), word)

    def is_normal(self, word: Word) -> bool:
        return all((word[i], word[i + 1]) not in self.rules for i in range(len(word) - 1))

    def word_from_names(self, names: Iterable[str]) -> Word:
        return tuple(self.index[n] for n in names)

    def word_str(self, word: Word, *, pretty: bool = False) -> str:
        if not word:
            return "1"
        names = self.pretty_names if pretty else self.generators
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name, n = names[word[i]], j - i
            if n == 1:
                parts.append(name)
            elif name.endswith("^-1"):
                parts.append(f"{name[:-3]}^-{n}")
            else:
                parts.append(f"{name}^{n}")
            i = j
        return (" " if pretty else "*").join(parts)

    # rule derivation ---------------------------------------------------

    def _free(self, text: str) -> _Free:
        leaves = {g: _Free({(i,): ONE}) for i, g in enumerate(self.generators)}
        inverse = {self.generators[g]: leaves[self.generators[h]] for g, h in self.inverses.items()}
        value = evaluate(
            parse_tree(text),
            leaves,
            one=_Free({(): ONE}),
            star=self._free_star,
            inverse=inverse,
            text=text,
        )
        if isinstance(value, Scalar):
            value = _Free({(): value})
        return value

    def _free_star(self, x: _Free) -> _Free:
        return _Free(
            {tuple(self.star_index[g] for g in reversed(w)): c.conjugate() for w, c in x.terms.items()}
        )

    def derive_rewrite_rules(self) -> dict:
        """Complete the defining relations and orient them into rewrite rules."""
        rels = [self._free(r) for r in self.relations]
        rels += [self._free_star(r) for r in rels]
        conjugated = []
        for r in rels:
            if len(r.terms) != 2:
                continue
            (w1, c1), (w2, c2) = r.terms.items()
            if len(w1) == 2 and len(w2) == 2 and w1 == w2[::-1]:
                for pos in (0, 1):
                    g = w1[pos]
                    if g in self.inverses and w1[1 - pos] not in self.inverses:
                        ginv = self.inverses[g]
                        conjugated.append(
                            _Free({_swap(w1, g, ginv): c1, _swap(w2, g, ginv): c2})
                        )
        rels += conjugated
        rules: dict = {}
        for r in rels:
            if not r.terms:
                continue
            lead = max(r.terms, key=self.order_key)
            if len(lead) != 2:
                raise ValueError(f"{self.name}: relation with leading word of length {len(lead)}")
            c = r.terms[lead]
            rhs = {w: -v / c for w, v in r.terms.items() if w != lead}
            rhs = self._check_oriented(lead, rhs)
            if lead in rules:
                if rules[lead] == rhs:
                    continue
                raise ValueError(f"{self.name}: conflicting rules for {self.word_str(lead)}")
            rules[lead] = rhs
        return rules

    def _check_oriented(self, lead: Word, rhs: Mapping[Word, Scalar]) -> dict:
        key = self.order_key(lead)
        for w in rhs:
            if self.order_key(w) >= key:
                raise ValueError(
                    f"{self.name}: rule {self.word_str(lead)} -> {self.word_str(w)} does not decrease the word order"
                )
        return {w: c for w, c in rhs.items() if c}

    # normal forms ------------------------------------------------------

    def _times_letter(self, word: Word, g: int) -> dict:
        key = (word, g)
        cached = self._prod_letter.get(key)
        if cached is not None:
            return cached
        if word and (word[-1], g) in self.rules:
            out: dict = {}
            prefix = word[:-1]
            for v, c in self.rules[(word[-1], g)].items():
                for w, d in self._times_word(prefix, v).items():
                    out[w] = out.get(w, ZERO) + c * d
            out = {w: c for w, c in out.items() if c}
        else:
            out = {word + (g,): ONE}
        self._prod_letter[key] = out
        return out

    def _times_word(self, word: Word, letters: Word) -> dict:
        """Normal form of ``word * letters`` where ``word`` is already normal."""
        if not letters:
            return {word: ONE}
        key = (word, letters)
        cached = self._prod_word.get(key)
        if cached is not None:
            return cached
        current = {word: ONE}
        for g in letters:
            nxt: dict = {}
            for w, c in current.items():
                for v, d in self._times_letter(w, g).items():
                    nxt[v] = nxt.get(v, ZERO) + c * d
            current = {w: c for w, c in nxt.items() if c}
        self._prod_word[key] = current
        return current

    def normal_form_word(self, word: Word) -> dict:
        """Normal form of an arbitrary word, as ``{normal word: coefficient}``."""
        cached = self._normal_cache.get(word)
        if cached is None:
            cached = self._times_word((), word)
            self._normal_cache[word] = cached
        return cached

    def normal_form(self, raw) -> Element:
        """Normalize a raw expression: text, a word, or a mapping ``{word: coeff}``."""
        if isinstance(raw, str):
            return self.parse(raw)
        if isinstance(raw, tuple):
            raw = {raw: ONE}
        out: dict = {}
        for w, c in raw.items():
            c = Scalar.coerce(c)
            if not c:
                continue
            if isinstance(w, str):
                w = (self.index[w],)
            for v, d in self.normal_form_word(tuple(w)).items():
                out[v] = out.get(v, ZERO) + c * d
        return Element(self, {w: c for w, c in out.items() if c})

    def rewrite_randomized(self, raw: Mapping[Word, Scalar], rng: random.Random) -> dict:
        """Exhaustive rewriting with a random redex chosen at every step.

        Independent of the memoized junction-only strategy; used to test that
        the normal form does not depend on the order of rule application.
        """
        current = {w: Scalar.coerce(c) for w, c in raw.items() if c}
        while True:
            reducible = [w for w in current if not self.is_normal(w)]
            if not reducible:
                return current
            w = rng.choice(sorted(reducible))
            positions = [i for i in range(len(w) - 1) if (w[i], w[i + 1]) in self.rules]
            i = rng.choice(positions)
            c = current.pop(w)
            for v, d in self.rules[(w[i], w[i + 1])].items():
                nw = w[:i] + v + w[i + 2 :]
                value = current.get(nw, ZERO) + c * d
                if value:
                    current[nw] = value
                else:
                    current.pop(nw, None)

    def check_local_confluence(self) -> list:
        """Resolve every overlap ``x y z`` of two left-hand sides.

        Returns a list of ``(overlap, left result, right result)`` for overlaps
        whose two one-step reductions have different normal forms.
        """
        failures = []
        for (x, y), rhs1 in sorted(self.rules.items()):
            for (y2, z), rhs2 in sorted(self.rules.items()):
                if y2 != y:
                    continue
                left = self.normal_form({v + (z,): c for v, c in rhs1.items()})
                right = self.normal_form({(x,) + v: c for v, c in rhs2.items()})
                if left != right:
                    failures.append((self.word_str((x, y, z)), str(left), str(right)))
        return failures

    # element construction ----------------------------------------------

    def element(self, terms: Mapping) -> Element:
        return self.normal_form(dict(terms))

    def one(self) -> Element:
        return Element(self, {(): ONE})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        c = Scalar.coerce(c)
        return Element(self, {(): c} if c else {})

    def gen(self, name: str) -> Element:
        if name in self.aliases:
            return self.parse(self.aliases[name])
        return Element(self, {(self.index[name],): ONE})

    def parse(self, text: str) -> Element:
        if self._leaves is None:
            leaves = {g: Element(self, {(i,): ONE}) for i, g in enumerate(self.generators)}
            self._leaves = leaves
            for alias, definition in self.aliases.items():
                leaves[alias] = self._evaluate(definition, leaves)
        return self._evaluate(text, self._leaves)

    def _evaluate(self, text: str, leaves) -> Element:
        inverse = {self.generators[g]: leaves[self.generators[h]] for g, h in self.inverses.items()}
        value = evaluate(parse_tree(text), leaves, one=self.one(), star=star, inverse=inverse, text=text)
        if isinstance(value, Scalar):
            value = self.scalar(value)
        return value

    def words(self, max_length: int) -> Iterator[Word]:
        """All letter sequences of length <= max_length (not necessarily normal)."""
        for n in range(max_length + 1):
            yield from _cartesian(range(len(self.generators)), repeat=n)

    def normal_words(self, max_length: int) -> list[Word]:
        return [w for w in self.words(max_length) if self.is_normal(w)]

    def __repr__(self):
        return f"Presentation({self.name!r})"

    # element operations --------------------------------------------------

    def mul(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                c = c1 * c2
                for v, d in self._times_word(w1, w2).items():
                    out[v] = out.get(v, ZERO) + c * d
        return Element(self, {w: c for w, c in out.items() if c})

    def star_word(self, word: Word) -> Word:
        return tuple(self.star_index[g] for g in reversed(word))

    def star(self, x: Element) -> Element:
        out: dict = {}
        for w, c in x.terms.items():
            cc = c.conjugate()
            for v, d in self.normal_form_word(self.star_word(w)).items():
                out[v] = out.get(v, ZERO) + cc * d
        return Element(self, {w: c for w, c in out.items() if c})

    def rules_text(self, *, pretty: bool = True) -> list[str]:
        lines = []
        for lhs in sorted(self.rules, key=self.order_key):
            rhs = self.normal_form(dict(self.rules[lhs]))
            lines.append(f"{self.word_str(lhs, pretty=pretty)} -> {rhs.pretty() if pretty else rhs}")
        return lines


def _swap(word: Word, g: int, ginv: int) -> Word:
    """Move ``g`` to the other side of the two-letter word and invert it."""
    return tuple(ginv if x == g else x for x in reversed(word))


class Element:
    """Linear combination of normal words with nonzero Scalar coefficients."""

    __slots__ = ("presentation", "terms", "_hash")

    def __init__(self, presentation: Presentation, terms: Mapping[Word, Scalar]):
        self.presentation = presentation
        self.terms = dict(terms)
        self._hash = None

    def _coerce(self, other) -> Element | None:
        if isinstance(other, Element):
            if other.presentation is not self.presentation:
                raise ValueError(
                    f"mixing elements of {self.presentation.name} and {other.presentation.name}"
                )
            return other
        try:
            return self.presentation.scalar(Scalar.coerce(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            value = out.get(w, ZERO) + c
            if value:
                out[w] = value
            else:
                out.pop(w, None)
        return Element(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.presentation, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            self._coerce(other)
            return self.presentation.mul(self, other)
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return self.presentation.zero()
        return Element(self.presentation, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * c

    def __pow__(self, n: int):
        result = self.presentation.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.presentation is other.presentation and self.terms == other.terms
        try:
            other = self.presentation.scalar(Scalar.coerce(other))
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word) -> Scalar:
        if isinstance(word, str):
            word = self.presentation.word_from_names(word.split())
        return self.terms.get(tuple(word), ZERO)

    def star(self) -> Element:
        return self.presentation.star(self)

    def sorted_terms(self) -> list[tuple[Word, Scalar]]:
        key = self.presentation.order_key
        return sorted(self.terms.items(), key=lambda item: key(item[0]))

    def map_coefficients(self, fn) -> Element:
        out = {}
        for w, c in self.terms.items():
            value = fn(c)
            if value:
                out[w] = value
        return Element(self.presentation, out)

    def _render(self, pretty: bool) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            word = self.presentation.word_str(w, pretty=pretty) if w else ""
            negative = False
            if c.is_single_term():
                text = str(c)
                if text.startswith("-"):
                    negative, text = True, text[1:]
            else:
                text = f"({c})" if word else str(c)
                if not word and len(self.terms) > 1:
                    text = f"({c})"
            if word:
                if text == "1":
                    body = word
                else:
                    body = f"{text} {word}" if pretty else f"{text}*{word}"
            else:
                body = text
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self._render(False)

    def pretty(self) -> str:
        return self._render(True)

    def __repr__(self):
        return f"Element({self.presentation.name}, {str(self)!r})"


def star(x):
    """The involution: antilinear antihomomorphism, conjugation on scalars."""
    if isinstance(x, Scalar):
        return x.conjugate()
    return x.star()


def normal_form(raw, presentation: Presentation) -> Element:
    return presentation.normal_form(raw)


def mul(x: Element, y: Element, presentation: Presentation | None = None) -> Element:
    presentation = presentation or x.presentation
    return presentation.mul(x, y)


def derive_rewrite_rules(presentation: Presentation) -> dict:
    return presentation.derive_rewrite_rules()


FUNQ_RELATIONS = (
    "b*a - q*a*b",
    "bs*a - q*a*bs",
    "b*bs - bs*b",
    "as*a + q^2*bs*b - 1",
    "a*as + b*bs - 1",
)

UQ_RELATIONS = (
    "e*k - q*k*e",
    "k^2 - kinv^2 - (q - q^-1)*(es*e - e*es)",
    "k*kinv - 1",
    "kinv*k - 1",
)


def funq_algebra(rule_overrides=None, *, check: bool = True) -> Presentation:
    """The algebra Fun_q(SU(2)) with generators a, a*, b, b*."""
    return Presentation(
        "funq",
        ("a", "as", "b", "bs"),
        ("a", "a*", "b", "b*"),
        {"a": "as", "as": "a", "b": "bs", "bs": "b"},
        FUNQ_RELATIONS,
        heavy=("a", "as"),
        aliases={"A": "b*bs", "B": "a*b", "Bs": "bs*as"},
        rule_overrides=rule_overrides,
        check=check,
    )


def uq_algebra(rule_overrides=None, *, check: bool = True) -> Presentation:
    """The algebra U_q(su(2)) with generators k^-1, k, e, e*."""
    return Presentation(
        "uq",
        ("kinv", "k", "e", "es"),
        ("k^-1", "k", "e", "e*"),
        {"kinv": "kinv", "k": "k", "e": "es", "es": "e"},
        UQ_RELATIONS,
        inverses={"k": "kinv", "kinv": "k"},
        rule_overrides=rule_overrides,
        check=check,
    )
