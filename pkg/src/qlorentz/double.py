"""The Drinfeld double D(U_q(su(2))) acting on Fun_q(SU(2)) and on the Podles sphere.

U_q(su(2)) enters the double with its coopposite coproduct, so Sweedler legs
on the U side are read from ``Delta^cop`` by default.  The other reading is
kept selectable (``u_sweedler="plain"``) because the formulas for the double's
antipode and star leave it implicit; the verification suite runs both and
shows that only the coopposite reading satisfies the laws.

Elements of the double are stored at the coalgebra level as sums of
``U-word (x) f-word``; products inside the double are never straightened and
all identities are evaluated through the action.
"""

from __future__ import annotations

import functools
from itertools import product as _cartesian
from typing import Iterable, Mapping

from .coeff import ONE, ZERO, Scalar, solve_linear
from .hopf import antipode, antipode_inv, coproduct, counit, funq, iterated_coproduct, TensorElement
from .ncpoly import Element, Word
from .pairing import Pairing, default_pairing

DEFAULT_DEGREE_CAP = 8


class NotInvariantError(ValueError):
    """The element is not right-invariant under k, so it is not on the sphere."""


class DegreeCapError(ValueError):
    """Sphere expansion would need monomials beyond the configured degree."""


class DoubleElement:
    """Finite sum of ``U-word (x) f-word`` with nonzero Scalar coefficients."""

    __slots__ = ("U", "F", "terms", "_hash")

    def __init__(self, U, F, terms: Mapping[tuple[Word, Word], Scalar]):
        self.U = U
        self.F = F
        self.terms = {k: v for k, v in terms.items() if v}
        self._hash = None

    @classmethod
    def pure(cls, u: Element, f: Element) -> DoubleElement:
        terms: dict = {}
        for (w1, c1), (w2, c2) in _cartesian(u.terms.items(), f.terms.items()):
            terms[(w1, w2)] = terms.get((w1, w2), ZERO) + c1 * c2
        return cls(u.presentation, f.presentation, terms)

    def __add__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return DoubleElement(self.U, self.F, out)

    def __neg__(self):
        return DoubleElement(self.U, self.F, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return DoubleElement(self.U, self.F, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def components(self) -> Iterable[tuple[Element, Element, Scalar]]:
        for (u, f), c in self.terms.items():
            yield Element(self.U, {u: ONE}), Element(self.F, {f: ONE}), c

    def _render(self, pretty: bool, sep: str) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (self.U.order_key(kv[0][0]), self.F.order_key(kv[0][1])))
        pieces = []
        for (u, f), c in items:
            body = f"{self.U.word_str(u, pretty=pretty)}{sep}{self.F.word_str(f, pretty=pretty)}"
            negative = False
            if c.is_single_term():
                text = str(c)
                if text.startswith("-"):
                    negative, text = True, text[1:]
            else:
                text = f"({c})"
            if text != "1":
                body = f"{text}*({body})" if not pretty else f"{text} ({body})"
            pieces.append(("-" if negative else "") + body if not pieces else (" - " if negative else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self._render(False, " (x) ")

    def pretty(self) -> str:
        return self._render(True, " ⊗ ")

    def __repr__(self):
        return f"DoubleElement({str(self)!r})"


class SpherePolynomial:
    """Element of the Podles sphere in the basis ``A^k B^m`` and ``A^k B*^n``.

    Keys are ``(k, m, n)`` with ``m * n == 0``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], Scalar]):
        self.terms = {k: v for k, v in terms.items() if v}

    def __eq__(self, other):
        if not isinstance(other, SpherePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_element(self, F=None) -> Element:
        F = F or funq()
        A, B, Bs = F.gen("A"), F.gen("B"), F.gen("Bs")
        total = F.zero()
        for (k, m, n), c in self.terms.items():
            total = total + (A**k) * (B**m) * (Bs**n) * c
        return total

    def map_coefficients(self, fn) -> dict:
        return {k: fn(c) for k, c in self.terms.items()}

    @staticmethod
    def monomial_str(key, pretty: bool = False) -> str:
        names = ("A", "B", "B*" if pretty else "Bs")
        parts = []
        for name, power in zip(names, key):
            if power == 1:
                parts.append(name)
            elif power > 1:
                parts.append(f"{name}^{power}")
        return (" " if pretty else "*").join(parts) or "1"

    def _render(self, pretty: bool) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = self.monomial_str(key, pretty)
            negative = False
            if c.is_single_term():
                text = str(c)
                if text.startswith("-"):
                    negative, text = True, text[1:]
            else:
                text = f"({c})"
            if mono == "1":
                body = text
            elif text == "1":
                body = mono
            else:
                body = f"{text} {mono}" if pretty else f"{text}*{mono}"
            pieces.append(("-" if negative else "") + body if not pieces else (" - " if negative else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self._render(False)

    def pretty(self) -> str:
        return self._render(True)

    def __repr__(self):
        return f"SpherePolynomial({str(self)!r})"


class QuantumDouble:
    """Actions of U_q(su(2)), Fun_q(SU(2)) and of their double on Fun_q(SU(2))."""

    def __init__(self, pairing: Pairing | None = None, *, u_sweedler: str = "cop"):
        if u_sweedler not in ("cop", "plain"):
            raise ValueError("u_sweedler must be 'cop' or 'plain'")
        self.pairing = pairing or default_pairing()
        self.U = self.pairing.U
        self.F = self.pairing.F
        self.u_sweedler = u_sweedler
        self._act_u: dict = {}
        self._act_f: dict = {}
        self._sphere_basis: dict = {}

    # coalgebra of the double ------------------------------------------

    def u_iterated(self, x: Element, n: int) -> TensorElement:
        """n-fold Sweedler legs of ``x`` in H^cop (or in H for the plain reading)."""
        t = iterated_coproduct(x, n)
        return t.swap() if self.u_sweedler == "cop" else t

    def double_coproduct(self, x: DoubleElement) -> dict:
        """``{((u1, f1), (u2, f2)): c}`` for the coproduct of H^cop (x) Fun."""
        out: dict = {}
        for (u, f), c in x.terms.items():
            ut = self.u_iterated(Element(self.U, {u: ONE}), 2)
            ft = iterated_coproduct(Element(self.F, {f: ONE}), 2)
            for (u1, u2), d in ut.terms.items():
                for (f1, f2), e in ft.terms.items():
                    key = ((u1, f1), (u2, f2))
                    out[key] = out.get(key, ZERO) + c * d * e
        return {k: v for k, v in out.items() if v}

    def double_counit(self, x: DoubleElement) -> Scalar:
        total = ZERO
        for (u, f), c in x.terms.items():
            total = total + c * self.U.hopf.counit_word(u) * self.F.hopf.counit_word(f)
        return total

    def generators(self) -> dict[str, DoubleElement]:
        """The eight generators ``k, k^-1, e, e* (x) 1`` and ``1 (x) a, a*, b, b*``."""
        gens = {}
        for name in self.U.generators:
            gens[name] = DoubleElement.pure(self.U.gen(name), self.F.one())
        for name in self.F.generators:
            gens[name] = DoubleElement.pure(self.U.one(), self.F.gen(name))
        return gens

    def element(self, u, f) -> DoubleElement:
        if isinstance(u, str):
            u = self.U.parse(u)
        if isinstance(f, str):
            f = self.F.parse(f)
        return DoubleElement.pure(u, f)

    # actions -------------------------------------------------------------

    def _act_u_words(self, v: Word, h: Word) -> dict:
        """``<v, h'> h''`` for U-word ``v`` already passed through S^-1."""
        key = (v, h)
        cached = self._act_u.get(key)
        if cached is None:
            cached = {}
            for (h1, h2), c in self.F.hopf.coproduct_word(h).terms.items():
                value = self.pairing.pair_words(v, h1)
                if value:
                    cached[h2] = cached.get(h2, ZERO) + c * value
            cached = {w: c for w, c in cached.items() if c}
            self._act_u[key] = cached
        return cached

    def act_U(self, U: Element, h: Element) -> Element:
        """``U |> h = <S^-1(U), h'> h''``."""
        V = antipode_inv(U)
        out: dict = {}
        for v, c in V.terms.items():
            for w, d in h.terms.items():
                for r, e in self._act_u_words(v, w).items():
                    out[r] = out.get(r, ZERO) + c * d * e
        return Element(self.F, {w: c for w, c in out.items() if c})

    def _act_f_words(self, f: Word, h: Word) -> dict:
        key = (f, h)
        cached = self._act_f.get(key)
        if cached is None:
            F = self.F
            total = F.zero()
            hel = Element(F, {h: ONE})
            for (f1, f2), c in F.hopf.coproduct_word(f).terms.items():
                total = total + Element(F, {f1: ONE}) * hel * F.hopf.antipode_word(f2) * c
            cached = total.terms
            self._act_f[key] = cached
        return cached

    def act_F(self, f: Element, h: Element) -> Element:
        """``f |> h = f' h S(f'')``, the adjoint action."""
        out: dict = {}
        for u, c in f.terms.items():
            for w, d in h.terms.items():
                for r, e in self._act_f_words(u, w).items():
                    out[r] = out.get(r, ZERO) + c * d * e
        return Element(self.F, {w: c for w, c in out.items() if c})

    def act_double(self, x: DoubleElement, h: Element) -> Element:
        """``(U (x) f) |> h = U |> (f |> h)``."""
        total = self.F.zero()
        for u, f, c in x.components():
            total = total + self.act_U(u, self.act_F(f, h)) * c
        return total

    def act(self, x, h: Element) -> Element:
        if isinstance(x, DoubleElement):
            return self.act_double(x, h)
        if x.presentation is self.U:
            return self.act_U(x, h)
        return self.act_F(x, h)

    # invariant subalgebra --------------------------------------------------

    def right_act(self, f: Element, kappa: Element) -> Element:
        """``f <| kappa = <kappa, f''> f'`` for a group-like ``kappa``."""
        if coproduct(kappa) != TensorElement.pure(kappa, kappa) or counit(kappa) != ONE:
            raise ValueError(f"right action needs a group-like element, got {kappa}")
        out: dict = {}
        for w, c in f.terms.items():
            for (f1, f2), d in self.F.hopf.coproduct_word(w).terms.items():
                value = self.pairing.pair(kappa, Element(self.F, {f2: ONE}))
                if value:
                    out[f1] = out.get(f1, ZERO) + c * d * value
        return Element(self.F, {w: c for w, c in out.items() if c})

    def is_podles(self, f: Element) -> bool:
        k = self.U.gen("k")
        return self.right_act(f, k) == f and self.right_act(f, antipode(k)) == f

    def _basis_element(self, key) -> Element:
        cached = self._sphere_basis.get(key)
        if cached is None:
            k, m, n = key
            F = self.F
            cached = (F.gen("A") ** k) * (F.gen("B") ** m) * (F.gen("Bs") ** n)
            self._sphere_basis[key] = cached
        return cached

    def sphere_basis(self, degree: int) -> list[tuple[int, int, int]]:
        keys = []
        for d in range(degree + 1):
            for k in range(d + 1):
                rest = d - k
                keys.append((k, rest, 0))
                if rest:
                    keys.append((k, 0, rest))
        return keys

    def express_in_sphere_generators(self, f: Element, degree_cap: int = DEFAULT_DEGREE_CAP) -> SpherePolynomial:
        """Expand a right-invariant element in the PBW basis of the Podles sphere."""
        if not self.is_podles(f):
            raise NotInvariantError(f"{f} is not right-invariant under k")
        if not f:
            return SpherePolynomial({})
        length = max(len(w) for w in f.terms)
        degree = (length + 1) // 2
        if degree > degree_cap:
            raise DegreeCapError(f"expansion needs sphere degree {degree} > cap {degree_cap}")
        keys = self.sphere_basis(degree)
        columns = [self._basis_element(key).terms for key in keys]
        try:
            solution = solve_linear(columns, f.terms)
        except ValueError as exc:
            raise DegreeCapError(f"{f} is not spanned by sphere monomials of degree <= {degree}: {exc}")
        return SpherePolynomial(dict(zip(keys, solution)))

    # antipode and star of the double -------------------------------------

    def _triple_sweedler(self, V: Element, g: Element, coeff: Scalar, out: dict) -> None:
        """Accumulate ``V'' (x) g'' <V', g'> <S^-1 V''', g'''>`` into ``out``."""
        ut = self.u_iterated(V, 3)
        ft = iterated_coproduct(g, 3)
        for (v1, v2, v3), c in ut.terms.items():
            for (g1, g2, g3), d in ft.terms.items():
                first = self.pairing.pair_words(v1, g1)
                if not first:
                    continue
                second = self.pairing.pair(self.U.hopf.antipode_inv_word(v3), Element(self.F, {g3: ONE}))
                if not second:
                    continue
                key = (v2, g2)
                out[key] = out.get(key, ZERO) + coeff * c * d * first * second

    def double_antipode(self, x: DoubleElement) -> DoubleElement:
        """``S_D(U (x) f) = (1 (x) S f)(S^-1 U (x) 1)``, expanded into the H^cop (x) Fun basis."""
        out: dict = {}
        for u, f, c in x.components():
            self._triple_sweedler(antipode_inv(u), antipode(f), c, out)
        return DoubleElement(self.U, self.F, out)

    def double_star(self, x: DoubleElement) -> DoubleElement:
        """``(U (x) f)* = (1 (x) f*)(U* (x) 1)``, expanded; antilinear."""
        out: dict = {}
        for u, f, c in x.components():
            self._triple_sweedler(u.star(), f.star(), c.conjugate(), out)
        return DoubleElement(self.U, self.F, out)

    def straighten_product_action(self, g: Element, V: Element, h: Element) -> Element:
        """Action of the product ``(1 (x) g)(V (x) 1)`` on ``h``: ``g |> (V |> h)``."""
        return self.act_F(g, self.act_U(V, h))

    # identities ------------------------------------------------------------

    def cross_relation_sides(self, U: Element, f: Element, h: Element) -> tuple[Element, Element]:
        """Both sides of ``<U',f'> U''|>(f''|>h) = <U'',f''> f'|>(U'|>h)``."""
        lhs = self.F.zero()
        rhs = self.F.zero()
        ut = self.u_iterated(U, 2)
        ft = iterated_coproduct(f, 2)
        for (u1, u2), c in ut.terms.items():
            for (f1, f2), d in ft.terms.items():
                U1, U2 = Element(self.U, {u1: ONE}), Element(self.U, {u2: ONE})
                F1, F2 = Element(self.F, {f1: ONE}), Element(self.F, {f2: ONE})
                left = self.pairing.pair_words(u1, f1)
                if left:
                    lhs = lhs + self.act_U(U2, self.act_F(F2, h)) * (c * d * left)
                right = self.pairing.pair_words(u2, f2)
                if right:
                    rhs = rhs + self.act_F(F1, self.act_U(U1, h)) * (c * d * right)
        return lhs, rhs

    def check_cross_relation(self, U: Element, f: Element, h: Element) -> bool:
        lhs, rhs = self.cross_relation_sides(U, f, h)
        return lhs == rhs

    def module_algebra_sides(self, x: DoubleElement, f: Element, h: Element) -> tuple[Element, Element]:
        """``x |> (f h)`` and ``(x' |> f)(x'' |> h)``."""
        lhs = self.act_double(x, f * h)
        rhs = self.F.zero()
        for ((u1, f1), (u2, f2)), c in self.double_coproduct(x).items():
            x1 = DoubleElement(self.U, self.F, {(u1, f1): ONE})
            x2 = DoubleElement(self.U, self.F, {(u2, f2): ONE})
            rhs = rhs + self.act_double(x1, f) * self.act_double(x2, h) * c
        return lhs, rhs

    def star_law_sides(self, x: DoubleElement, f: Element) -> tuple[Element, Element]:
        """``(x |> f)*`` and ``(S_D(x))* |> f*``."""
        return self.act_double(x, f).star(), self.act_double(self.double_star(self.double_antipode(x)), f.star())

    def antipode_law_sides(self, x: DoubleElement, h: Element) -> tuple[Element, Element, Element]:
        """``S_D(x') |> (x'' |> h)``, ``x' |> (S_D(x'') |> h)`` and ``eps(x) h``."""
        left = self.F.zero()
        right = self.F.zero()
        for ((u1, f1), (u2, f2)), c in self.double_coproduct(x).items():
            x1 = DoubleElement(self.U, self.F, {(u1, f1): ONE})
            x2 = DoubleElement(self.U, self.F, {(u2, f2): ONE})
            left = left + self.act_double(self.double_antipode(x1), self.act_double(x2, h)) * c
            right = right + self.act_double(x1, self.act_double(self.double_antipode(x2), h)) * c
        return left, right, h * self.double_counit(x)


@functools.cache
def default_double() -> QuantumDouble:
    return QuantumDouble()


def act_U(U: Element, h: Element) -> Element:
    return default_double().act_U(U, h)


def act_F(f: Element, h: Element) -> Element:
    return default_double().act_F(f, h)


def act_double(x: DoubleElement, h: Element) -> Element:
    return default_double().act_double(x, h)


def right_act(f: Element, kappa: Element) -> Element:
    return default_double().right_act(f, kappa)


def is_podles(f: Element) -> bool:
    return default_double().is_podles(f)


def express_in_sphere_generators(f: Element, degree_cap: int = DEFAULT_DEGREE_CAP) -> SpherePolynomial:
    return default_double().express_in_sphere_generators(f, degree_cap)


def double_antipode(x: DoubleElement) -> DoubleElement:
    return default_double().double_antipode(x)


def double_star(x: DoubleElement) -> DoubleElement:
    return default_double().double_star(x)


def check_cross_relation(U: Element, f: Element, h: Element) -> bool:
    return default_double().check_cross_relation(U, f, h)
