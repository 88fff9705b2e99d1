"""The q -> 1 limit of the q-Lorentz action on the Podles sphere.

At ``q = 1`` the sphere becomes the commutative algebra generated by
``A = 1/(|z|^2 + 1)``, ``B = z/(|z|^2 + 1)`` and ``B* = conj(B)``.  The Lie
algebras of SU(2) and AN act on it by derivations, tabulated here on the
three generators and extended by the Leibniz rule.  Those tables serve as the
oracle for the limits of the quantum actions.

Remark on degeneration: ``f |> h`` tends to ``eps(f) h`` as ``q -> 1``, so the
Fun_q(SU(2)) action alone has a trivial limit.  Only the combinations
``(a - a*)/(2 ln q)``, ``b/ln q`` and ``b*/ln q`` survive, which is why the
AN limits go through :meth:`Scalar.limit_div_lnq`.  Likewise
``k = q^(i R3)``, so ``R3`` is ``lim (k - 1)/(i ln q)``.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Mapping

from .coeff import ONE_G, ZERO_G, GaussianRational, Scalar
from .double import QuantumDouble, SpherePolynomial, default_double
from .expr import evaluate, parse_tree
from .ncpoly import Element

Monomial = tuple  # (power of A, power of B, power of B*)
GENERATORS = ("A", "B", "Bs")
_I = GaussianRational(0, 1)


class ClassicalElement:
    """Function on the classical sphere, a polynomial in A, B, B*.

    Stored in the basis ``A^k B^m B*^n`` with ``m * n == 0``, i.e. reduced
    modulo the sphere relation ``B B* = A - A^2``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        self.terms = _reduce_sphere(terms or {})

    @classmethod
    def generator(cls, name: str) -> ClassicalElement:
        i = GENERATORS.index(name)
        return cls({tuple(int(j == i) for j in range(3)): ONE_G})

    @classmethod
    def constant(cls, c) -> ClassicalElement:
        return cls({(0, 0, 0): _gauss(c)})

    @classmethod
    def parse(cls, text: str) -> ClassicalElement:
        leaves = {name: cls.generator(name) for name in GENERATORS}
        value = evaluate(parse_tree(text), leaves, one=cls.constant(1), star=_classical_star, text=text)
        return value if isinstance(value, ClassicalElement) else cls.constant(value)

    def _coerce(self, other):
        if isinstance(other, ClassicalElement):
            return other
        try:
            return ClassicalElement.constant(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO_G) + c
        return ClassicalElement(out)

    __radd__ = __add__

    def __neg__(self):
        return ClassicalElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out.get(m, ZERO_G) + c1 * c2
        return ClassicalElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = ClassicalElement.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def partial(self, index: int) -> ClassicalElement:
        out: dict = {}
        for m, c in self.terms.items():
            if m[index]:
                dm = tuple(p - (j == index) for j, p in enumerate(m))
                out[dm] = out.get(dm, ZERO_G) + c * m[index]
        return ClassicalElement(out)

    def evaluate(self, A: complex, B: complex, Bs: complex) -> complex:
        return sum(complex(c) * A ** m[0] * B ** m[1] * Bs ** m[2] for m, c in self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = SpherePolynomial.monomial_str(m)
            text = str(c)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            if mono == "1":
                body = text
            elif text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
            pieces.append(("-" if negative else "") + body if not pieces else (" - " if negative else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"ClassicalElement({str(self)!r})"


def _reduce_sphere(terms) -> dict:
    out: dict = {}
    stack = [(m, GaussianRational.coerce(c)) for m, c in terms.items()]
    while stack:
        (k, m, n), c = stack.pop()
        if not c:
            continue
        if m and n:
            # B B* -> A - A^2
            stack.append(((k + 1, m - 1, n - 1), c))
            stack.append(((k + 2, m - 1, n - 1), -c))
            continue
        key = (k, m, n)
        value = out.get(key, ZERO_G) + c
        if value:
            out[key] = value
        else:
            out.pop(key, None)
    return out


def _gauss(c) -> GaussianRational:
    if isinstance(c, Scalar):
        if c.laurent_terms() is None or set(c.laurent_terms()) - {0}:
            raise ValueError(f"{c} depends on q; classical coefficients are q-free")
        return c.laurent_terms().get(0, ZERO_G)
    return GaussianRational.coerce(c)


def _classical_star(x):
    if isinstance(x, Scalar):
        return x.conjugate()
    # B <-> B*, A real, coefficients conjugated
    return ClassicalElement({(m[0], m[2], m[1]): c.conjugate() for m, c in x.terms.items()})


class ClassicalDerivation:
    """A derivation of the classical sphere algebra, fixed by its values on A, B, B*."""

    def __init__(self, name: str, values: Mapping[str, ClassicalElement]):
        self.name = name
        self.values = {g: values.get(g, ClassicalElement()) for g in GENERATORS}

    @classmethod
    def from_table(cls, name: str, table: Mapping[str, str]) -> ClassicalDerivation:
        return cls(name, {g: ClassicalElement.parse(v) for g, v in table.items()})

    def __call__(self, p: ClassicalElement) -> ClassicalElement:
        return classical_act(self, p)

    def __add__(self, other: ClassicalDerivation) -> ClassicalDerivation:
        return ClassicalDerivation(f"({self.name} + {other.name})", {g: self.values[g] + other.values[g] for g in GENERATORS})

    def __sub__(self, other: ClassicalDerivation) -> ClassicalDerivation:
        return ClassicalDerivation(f"({self.name} - {other.name})", {g: self.values[g] - other.values[g] for g in GENERATORS})

    def scale(self, c, name: str | None = None) -> ClassicalDerivation:
        c = _gauss(c) if not isinstance(c, GaussianRational) else c
        return ClassicalDerivation(name or f"{c}*{self.name}", {g: v * c for g, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, ClassicalDerivation):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values[g] for g in GENERATORS))

    def preserves_sphere(self) -> bool:
        """Whether the derivation kills the relation ``B B* - A + A^2`` (tangency)."""
        B, Bs, A = (self.values[g] for g in ("B", "Bs", "A"))
        return not (B * ClassicalElement.generator("Bs") + ClassicalElement.generator("B") * Bs - A
                    + ClassicalElement.generator("A") * A * 2)

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def __repr__(self):
        table = ", ".join(f"{g} -> {self.values[g]}" for g in GENERATORS)
        return f"ClassicalDerivation({self.name}: {table})"


def classical_act(D: ClassicalDerivation, p: ClassicalElement) -> ClassicalElement:
    """Leibniz extension: ``D(p) = sum_g dp/dg * D(g)``."""
    total = ClassicalElement()
    for i, g in enumerate(GENERATORS):
        dp = p.partial(i)
        if dp:
            total = total + dp * D.values[g]
    return total


def derivation_bracket(D1: ClassicalDerivation, D2: ClassicalDerivation) -> ClassicalDerivation:
    """``[D1, D2] = D1 D2 - D2 D1``, again a derivation, given by its generator values."""
    values = {g: classical_act(D1, D2.values[g]) - classical_act(D2, D1.values[g]) for g in GENERATORS}
    return ClassicalDerivation(f"[{D1.name}, {D2.name}]", values)


# Infinitesimal Moebius action of Lie(SU(2)) and Lie(AN) on the generators.
SU2_TABLE = {
    "R3": {"B": "i*B", "Bs": "-i*Bs", "A": "0"},
    "R1+iR2": {"B": "i*(2*A - 1)", "Bs": "0", "A": "-i*Bs"},
    "-R1+iR2": {"B": "0", "Bs": "i*(2*A - 1)", "A": "-i*B"},
}
AN_TABLE = {
    "T0": {"B": "B*(2*A - 1)", "Bs": "Bs*(2*A - 1)", "A": "2*A*(A - 1)"},
    "iT1+T2": {"B": "2*B^2", "Bs": "-2*A^2", "A": "2*A*B"},
    "iT1-T2": {"B": "2*A^2", "Bs": "-2*Bs^2", "A": "-2*A*Bs"},
}
SU2_NAMES = tuple(SU2_TABLE)
AN_NAMES = tuple(AN_TABLE)


@functools.cache
def derivations() -> dict[str, ClassicalDerivation]:
    """The six tabulated combinations plus the recovered R1, R2, T1, T2."""
    ds = {name: ClassicalDerivation.from_table(name, t) for name, t in {**SU2_TABLE, **AN_TABLE}.items()}
    half = GaussianRational(Fraction(1, 2))
    x, y = ds["R1+iR2"], ds["-R1+iR2"]
    ds["R1"] = (x - y).scale(half, "R1")
    ds["R2"] = (x + y).scale(half / _I, "R2")
    p, m = ds["iT1+T2"], ds["iT1-T2"]
    ds["T1"] = (p + m).scale(half / _I, "T1")
    ds["T2"] = (p - m).scale(half, "T2")
    return ds


def to_classical(poly: SpherePolynomial, coefficient) -> ClassicalElement:
    """Send ``A^k B^m B*^n`` to the commutative monomial, mapping each coefficient."""
    out: dict = {}
    for key, c in poly.terms.items():
        value = coefficient(c)
        if value:
            out[key] = out.get(key, ZERO_G) + value
    return ClassicalElement(out)


def sphere_monomials(max_degree: int = 2) -> list[tuple[str, ...]]:
    """All ordered products of A, B, B* of length <= max_degree (names only)."""
    out: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_degree):
        frontier = [w + (g,) for w in frontier for g in GENERATORS]
        out += frontier
    return out


def monomial_element(names: tuple[str, ...], D: QuantumDouble | None = None) -> Element:
    D = D or default_double()
    result = D.F.one()
    for n in names:
        result = result * D.F.gen(n)
    return result


def monomial_classical(names: tuple[str, ...]) -> ClassicalElement:
    result = ClassicalElement.constant(1)
    for n in names:
        result = result * ClassicalElement.generator(n)
    return result


def _as_element(h, D: QuantumDouble) -> Element:
    if isinstance(h, str):
        return D.F.parse(h)
    if isinstance(h, SpherePolynomial):
        return h.to_element(D.F)
    return h


def quantum_su2_numerator(name: str, h, D: QuantumDouble | None = None) -> tuple[Element, str]:
    """The q-dependent element whose limit gives the SU(2) action, and how to take it.

    Returns ``(x, mode)`` with mode ``"lnq"`` (divide by ``ln q``, then take the
    limit) or ``"value"`` (evaluate at ``q = 1``).  ``"-R3"`` uses ``k^-1``.
    """
    D = D or default_double()
    h = _as_element(h, D)
    U = D.U
    if name == "R3":
        return (D.act_U(U.gen("k"), h) - h) * Scalar.parse("-i"), "lnq"
    if name == "-R3":
        return (D.act_U(U.gen("kinv"), h) - h) * Scalar.parse("-i"), "lnq"
    if name == "R1+iR2":
        return D.act_U(U.gen("es"), h) * Scalar.parse("i"), "value"
    if name == "-R1+iR2":
        return D.act_U(U.gen("e"), h) * Scalar.parse("-i"), "value"
    raise KeyError(f"unknown su(2) combination {name!r}")


def quantum_an_numerator(name: str, h, D: QuantumDouble | None = None) -> Element:
    """The ``ln q``-free numerator of the AN action: ``(a - a*)/2``, ``b`` or ``b*`` acting on h."""
    D = D or default_double()
    h = _as_element(h, D)
    F = D.F
    if name == "T0":
        return (D.act_F(F.gen("a"), h) - D.act_F(F.gen("as"), h)) * Scalar.parse("1/2")
    if name == "iT1+T2":
        return D.act_F(F.gen("b"), h)
    if name == "iT1-T2":
        return D.act_F(F.gen("bs"), h)
    raise KeyError(f"unknown Lie(AN) combination {name!r}")


def quantum_limit_su2(name: str, h, D: QuantumDouble | None = None) -> ClassicalElement:
    """Exact q -> 1 limit of an su(2) generator acting on a sphere element.

    ``R3 = lim (k - 1)/(i ln q)``, ``R1 + i R2 = i e*``, ``-R1 + i R2 = -i e``.
    """
    D = D or default_double()
    x, mode = quantum_su2_numerator(name, h, D)
    poly = D.express_in_sphere_generators(x)
    if mode == "lnq":
        return to_classical(poly, Scalar.limit_div_lnq)
    return to_classical(poly, Scalar.eval_at_one)


def quantum_limit_an(name: str, h, D: QuantumDouble | None = None) -> ClassicalElement:
    """Exact q -> 1 limit of ``(a - a*)/(2 ln q)``, ``b/ln q`` or ``b*/ln q`` acting on h."""
    D = D or default_double()
    poly = D.express_in_sphere_generators(quantum_an_numerator(name, h, D))
    return to_classical(poly, Scalar.limit_div_lnq)


def numeric_limit(x: Element, mode: str, q: float, D: QuantumDouble | None = None) -> dict:
    """Float evaluation of each sphere coefficient at a given q (test oracle only)."""
    import math

    D = D or default_double()
    poly = D.express_in_sphere_generators(x)
    if mode == "lnq":
        return {k: c.evaluate(q) / math.log(q) for k, c in poly.terms.items()}
    return {k: c.evaluate(q) for k, c in poly.terms.items()}
