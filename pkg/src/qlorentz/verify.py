"""Named verification checks over every layer of the engine.

Each check compares two exactly computed sides and records both on failure.
Presentations are rebuilt here with the confluence gate switched off, so a
broken rewriting system (for instance one fed through ``rule_overrides``)
shows up as failing checks with counterexamples instead of an exception.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from .classical import (
    AN_NAMES,
    GENERATORS as SPHERE_GENERATORS,
    SU2_NAMES,
    ClassicalElement,
    classical_act,
    derivation_bracket,
    derivations,
    monomial_classical,
    monomial_element,
    quantum_an_numerator,
    quantum_limit_an,
    quantum_limit_su2,
    quantum_su2_numerator,
    to_classical,
)
from .coeff import ONE, ZERO, Scalar
from .double import DoubleElement, QuantumDouble, SpherePolynomial
from .hopf import (
    TensorElement,
    antipode,
    antipode_inv,
    build_funq,
    build_uq,
    coproduct,
    counit,
)
from .ncpoly import Element, Presentation
from .pairing import Pairing

SCOPES = ("relations", "hopf", "pairing", "13a", "13b", "structure", "limits", "brackets", "all")
SCOPE_ALIASES = {"laws": "structure"}


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" or "fail"
    lhs: str
    rhs: str
    presentation: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


class Context:
    """Everything a check may touch, built lazily from (possibly overridden) rules."""

    def __init__(self, funq_overrides=None, uq_overrides=None, *, u_sweedler: str = "cop", degree_cap: int = 8):
        self.funq_overrides = funq_overrides
        self.uq_overrides = uq_overrides
        self.u_sweedler = u_sweedler
        self.degree_cap = degree_cap

    @functools.cached_property
    def F(self) -> Presentation:
        return build_funq(self.funq_overrides, check=False)

    @functools.cached_property
    def U(self) -> Presentation:
        return build_uq(self.uq_overrides, check=False)

    @functools.cached_property
    def pairing(self) -> Pairing:
        return Pairing(self.U, self.F)

    @functools.cached_property
    def double(self) -> QuantumDouble:
        return QuantumDouble(self.pairing, u_sweedler=self.u_sweedler)

    def sphere(self, x: Element) -> SpherePolynomial:
        return self.double.express_in_sphere_generators(x, self.degree_cap)


@dataclass(frozen=True)
class Report:
    scope: str
    checks: tuple

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "summary": {"total": len(self.checks), "passed": self.passed, "failed": self.failed},
            "checks": [c.to_dict() for c in self.checks],
        }


# (name, presentation, scope, function ctx -> (ok, lhs, rhs[, detail]))
_REGISTRY: list[tuple[str, str, str, Callable]] = []


def _check(scope: str, name: str, presentation: str):
    def register(fn):
        _REGISTRY.append((name, presentation, scope, fn))
        return fn

    return register


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return " ; ".join(_fmt(v) for v in value)
    return str(value)


def _equal(lhs, rhs) -> tuple:
    return lhs == rhs, _fmt(lhs), _fmt(rhs)


def _all(cases: Iterable, sides: Callable) -> tuple:
    """Run ``sides(case) -> (lhs, rhs)`` over cases, stopping at the first mismatch."""
    n = 0
    for case in cases:
        lhs, rhs = sides(case)
        n += 1
        if lhs != rhs:
            return False, _fmt(lhs), _fmt(rhs), f"counterexample: {_fmt(case)}"
    return True, f"{n} cases", f"{n} cases", ""


# relations ---------------------------------------------------------------

FUNQ_RELATION_CHECKS = {
    "ba": ("b*a", "q*a*b"),
    "bsa": ("bs*a", "q*a*bs"),
    "bbs": ("b*bs", "bs*b"),
    "asbs": ("as*bs", "q*bs*as"),
    "asb": ("as*b", "q*b*as"),
    "unitary.left": ("as*a + q^2*bs*b", "1"),
    "unitary.right": ("a*as + b*bs", "1"),
}
UQ_RELATION_CHECKS = {
    "ek": ("e*k", "q*k*e"),
    "kes": ("k*es", "q*es*k"),
    "kinve": ("kinv*e", "q*e*kinv"),
    "eskinv": ("es*kinv", "q*kinv*es"),
    "eesstar": ("(q - q^-1)*(es*e - e*es)", "k^2 - kinv^2"),
    "kkinv": ("k*kinv", "1"),
    "kinvk": ("kinv*k", "1"),
}


def _relation_check(attr: str, lhs: str, rhs: str):
    def run(ctx):
        P = getattr(ctx, attr)
        return _equal(P.parse(lhs), P.parse(rhs))

    return run


for _key, (_l, _r) in FUNQ_RELATION_CHECKS.items():
    _check("relations", f"relations.funq.{_key}", "funq")(_relation_check("F", _l, _r))
for _key, (_l, _r) in UQ_RELATION_CHECKS.items():
    _check("relations", f"relations.uq.{_key}", "uq")(_relation_check("U", _l, _r))


def _confluence(attr: str):
    def run(ctx):
        failures = getattr(ctx, attr).check_local_confluence()
        if failures:
            overlap, left, right = failures[0]
            return False, left, right, f"overlap {overlap} ({len(failures)} failing)"
        return True, "0 failing overlaps", "0 failing overlaps", ""

    return run


def _randomized(attr: str, samples: int = 500, seed: int = 20240611):
    def run(ctx):
        P = getattr(ctx, attr)
        rng = random.Random(seed)
        ngen = len(P.generators)

        def cases():
            for _ in range(samples):
                word = tuple(rng.randrange(ngen) for _ in range(rng.randint(1, 6)))
                yield {word: ONE}

        def sides(raw):
            return P.normal_form(raw), Element(P, P.rewrite_randomized(raw, rng))

        return _all(cases(), sides)

    return run


for _attr, _p in (("F", "funq"), ("U", "uq")):
    _check("relations", f"relations.{_p}.confluence", _p)(_confluence(_attr))
    _check("relations", f"relations.{_p}.random500", _p)(_randomized(_attr))


# Hopf axioms -------------------------------------------------------------


def _words(P: Presentation, n: int = 3):
    return [P.normal_form(w) for w in P.words(n)]


def _coassoc(ctx, P):
    def sides(x):
        d = coproduct(x)
        left: dict = {}
        right: dict = {}
        for (u, v), c in d.terms.items():
            for (u1, u2), c1 in P.hopf.coproduct_word(u).terms.items():
                left[(u1, u2, v)] = left.get((u1, u2, v), ZERO) + c * c1
            for (v1, v2), c2 in P.hopf.coproduct_word(v).terms.items():
                right[(u, v1, v2)] = right.get((u, v1, v2), ZERO) + c * c2
        return TensorElement([P] * 3, left), TensorElement([P] * 3, right)

    return _all(_words(P), sides)


def _counit_law(ctx, P):
    def sides(x):
        d = coproduct(x)
        left = d.apply(lambda y: P.scalar(counit(y)), lambda y: y).multiply()
        right = d.apply(lambda y: y, lambda y: P.scalar(counit(y))).multiply()
        return (left, right), (x, x)

    return _all(_words(P), sides)


def _antipode_law(ctx, P):
    def sides(x):
        d = coproduct(x)
        e = P.scalar(counit(x))
        return (d.apply(antipode, lambda y: y).multiply(), d.apply(lambda y: y, antipode).multiply()), (e, e)

    return _all(_words(P), sides)


def _star_compat(ctx, P):
    def sides(x):
        return (coproduct(x.star()), counit(x.star())), (coproduct(x).star(), counit(x).conjugate())

    return _all(_words(P), sides)


def _antipode_star(ctx, P):
    # S(S(x)*)* = x and S^-1 S = id
    def sides(x):
        return (antipode(antipode(x).star()).star(), antipode_inv(antipode(x))), (x, x)

    return _all(_words(P), sides)


for _attr, _p in (("F", "funq"), ("U", "uq")):
    for _law, _fn in (
        ("coassoc", _coassoc),
        ("counit", _counit_law),
        ("antipode", _antipode_law),
        ("star", _star_compat),
        ("antipode_star", _antipode_star),
    ):
        _check("hopf", f"hopf.{_law}.{_p}.len3", _p)(
            (lambda fn, attr: lambda ctx: fn(ctx, getattr(ctx, attr)))(_fn, _attr)
        )


# pairing -----------------------------------------------------------------

PAIRING_EXPECTED = {
    ("k", "a"): "q^(1/2)",
    ("k", "as"): "q^(-1/2)",
    ("k", "b"): "0",
    ("k", "bs"): "0",
    ("e", "a"): "0",
    ("e", "as"): "0",
    ("e", "b"): "0",
    ("e", "bs"): "-q^-1",
    ("es", "a"): "0",
    ("es", "as"): "0",
    ("es", "b"): "1",
    ("es", "bs"): "0",
}

for (_u, _f), _v in PAIRING_EXPECTED.items():
    _check("pairing", f"pairing.table.{_u}.{_f}", "uq|funq")(
        (lambda u, f, v: lambda ctx: _equal(ctx.pairing.pair(ctx.U.gen(u), ctx.F.gen(f)), Scalar.parse(v)))(_u, _f, _v)
    )


@_check("pairing", "pairing.inverse_row", "uq|funq")
def _inverse_row(ctx):
    U, F, p = ctx.U, ctx.F, ctx.pairing
    k, kinv = U.index["k"], U.index["kinv"]

    def sides(g):
        return (p.pair_words((k, kinv), (g,)), p.pair_words((kinv, k), (g,))), (
            F.hopf.counit_table[g],
            F.hopf.counit_table[g],
        )

    return _all(range(len(F.generators)), sides)


def _gens_and_one(P: Presentation) -> list[Element]:
    return [P.one()] + [P.gen(g) for g in P.generators]


@_check("pairing", "pairing.well_defined", "uq|funq")
def _well_defined(ctx):
    defects = ctx.pairing.relation_defects(3)
    if defects:
        rel, word, value = defects[0]
        return False, str(value), "0", f"<{rel}, {word}> ({len(defects)} defects)"
    return True, "0 defects", "0 defects", ""


@_check("pairing", "pairing.star_compat.generators", "uq|funq")
def _pairing_star(ctx):
    p = ctx.pairing
    cases = [(u, f) for u in _gens_and_one(ctx.U) for f in _gens_and_one(ctx.F)]
    return _all(cases, lambda c: (p.pair(c[0].star(), c[1]), p.pair(c[0], antipode(c[1]).star()).conjugate()))


@_check("pairing", "pairing.product.U", "uq|funq")
def _pairing_product_u(ctx):
    # <U V, f> computed on normal forms vs <U (x) V, Delta f>
    p = ctx.pairing
    gens_u = [ctx.U.gen(g) for g in ctx.U.generators]
    cases = [(u, v, f) for u in gens_u for v in gens_u for f in _words(ctx.F, 2)]

    def sides(c):
        u, v, f = c
        right = ZERO
        for (f1, f2), d in coproduct(f).terms.items():
            right = right + d * p.pair(u, Element(ctx.F, {f1: ONE})) * p.pair(v, Element(ctx.F, {f2: ONE}))
        return p.pair(u * v, f), right

    return _all(cases, sides)


@_check("pairing", "pairing.product.F", "uq|funq")
def _pairing_product_f(ctx):
    # <U, f g> computed on normal forms vs <Delta U, f (x) g>
    p = ctx.pairing
    gens_f = [ctx.F.gen(g) for g in ctx.F.generators]
    cases = [(u, f, g) for u in _words(ctx.U, 2) for f in gens_f for g in gens_f]

    def sides(c):
        u, f, g = c
        right = ZERO
        for (u1, u2), d in coproduct(u).terms.items():
            right = right + d * p.pair(Element(ctx.U, {u1: ONE}), f) * p.pair(Element(ctx.U, {u2: ONE}), g)
        return p.pair(u, f * g), right

    return _all(cases, sides)


@_check("pairing", "pairing.routes", "uq|funq")
def _pairing_routes(ctx):
    p = ctx.pairing
    cases = [(u, f) for u in _words(ctx.U, 2) for f in _words(ctx.F, 2)]
    return _all(cases, lambda c: (p.pair(*c), p.pair_via_fun_coproduct(*c)))


@_check("pairing", "pairing.antipode", "uq|funq")
def _pairing_antipode(ctx):
    p = ctx.pairing
    cases = [(u, f) for u in _words(ctx.U, 2) for f in _words(ctx.F, 2)]
    return _all(cases, lambda c: (p.pair(antipode(c[0]), c[1]), p.pair(c[0], antipode(c[1]))))


# explicit action tables ----------------------------------------------------

ACTION_U = {
    ("k", "B"): "q^-1*B",
    ("k", "Bs"): "q*Bs",
    ("k", "A"): "A",
    ("kinv", "B"): "q*B",
    ("kinv", "Bs"): "q^-1*Bs",
    ("kinv", "A"): "A",
    ("e", "B"): "0",
    ("e", "Bs"): "q^(-1/2) - (q^(3/2) + q^(-1/2))*A",
    ("e", "A"): "q^(1/2)*B",
    ("es", "B"): "-q^(-3/2) + (q^(1/2) + q^(-3/2))*A",
    ("es", "Bs"): "0",
    ("es", "A"): "-q^(-1/2)*Bs",
}
ACTION_F = {
    ("a", "B"): "q^-1*B + (q - q^-1)*B*A",
    ("a", "Bs"): "q^-1*Bs + (q - q^-1)*A*Bs",
    ("a", "A"): "q^-2*A + (1 - q^-2)*A^2",
    ("as", "B"): "q*B + (q - q^3)*A*B",
    ("as", "Bs"): "q*Bs + (q - q^3)*Bs*A",
    ("as", "A"): "q^2*A + (q^2 - q^4)*A^2",
    ("b", "B"): "(q^2 - 1)*B^2",
    ("b", "Bs"): "(1 - q^2)*A^2",
    ("b", "A"): "(q^3 - q)*B*A",
    ("bs", "B"): "(q - q^-1)*A^2",
    ("bs", "Bs"): "-(q - q^-1)*Bs^2",
    ("bs", "A"): "(1 - q^2)*A*Bs",
}


def _action_check(side: str, g: str, h: str, expected: str):
    def run(ctx):
        P = ctx.U if side == "U" else ctx.F
        got = ctx.double.act(P.gen(g), ctx.F.gen(h))
        return _equal(ctx.sphere(got), ctx.sphere(ctx.F.parse(expected)))

    return run


for (_g, _h), _e in ACTION_U.items():
    _check("13a", f"13a.{_g}.{_h}", "uq|funq")(_action_check("U", _g, _h, _e))
for (_g, _h), _e in ACTION_F.items():
    _check("13b", f"13b.{_g}.{_h}", "funq")(_action_check("F", _g, _h, _e))


# structure: sphere, laws of the double ------------------------------------

PODLES_RELATIONS = {
    "AB": ("A*B", "q^2*B*A"),
    "ABs": ("A*Bs", "q^-2*Bs*A"),
    "BBs": ("B*Bs", "q^-2*A*(1 - A)"),
    "BsB": ("Bs*B", "A*(1 - q^2*A)"),
}
for _key, (_l, _r) in PODLES_RELATIONS.items():
    _check("structure", f"podles.{_key}", "funq")(_relation_check("F", _l, _r))


def _sphere_h(ctx) -> list[Element]:
    return [ctx.F.gen(g) for g in SPHERE_GENERATORS]


def _sphere_monomials(ctx, degree: int = 2):
    out = [ctx.F.one()]
    frontier = [ctx.F.one()]
    for _ in range(degree):
        frontier = [m * ctx.F.gen(g) for m in frontier for g in SPHERE_GENERATORS]
        out += frontier
    return out


DOUBLE_GENERATORS = ("k", "kinv", "e", "es", "a", "as", "b", "bs")


def _double_gen(ctx, name: str) -> DoubleElement:
    return ctx.double.generators()[name]


@_check("structure", "podles.generators", "funq")
def _podles_generators(ctx):
    return _all(SPHERE_GENERATORS, lambda g: (ctx.double.is_podles(ctx.F.gen(g)), True))


@_check("structure", "podles.roundtrip", "funq")
def _roundtrip(ctx):
    return _all(_sphere_monomials(ctx, 3), lambda m: (ctx.sphere(m).to_element(ctx.F), m))


@_check("structure", "podles.nonmember", "funq")
def _nonmember(ctx):
    return _all(("a", "b", "as", "bs", "a*b*b"), lambda t: (ctx.double.is_podles(ctx.F.parse(t)), False))


def _per_generator(prefix: str, fn: Callable, names=DOUBLE_GENERATORS):
    for name in names:
        _check("structure", f"{prefix}.{name}", "double")(
            (lambda n: lambda ctx: fn(ctx, _double_gen(ctx, n)))(name)
        )


def _stability(ctx, x):
    return _all(_sphere_monomials(ctx), lambda m: (ctx.double.is_podles(ctx.double.act_double(x, m)), True))


def _module_algebra(ctx, x):
    hs = _sphere_h(ctx)
    return _all([(f, h) for f in hs for h in hs], lambda c: ctx.double.module_algebra_sides(x, *c))


def _star_law(ctx, x):
    return _all(_sphere_h(ctx), lambda f: ctx.double.star_law_sides(x, f))


def _antipode_action(ctx, x):
    def sides(h):
        left, right, expected = ctx.double.antipode_law_sides(x, h)
        return (left, right), (expected, expected)

    return _all(_sphere_h(ctx), sides)


_per_generator("stability", _stability)
_per_generator("laws.9a", _module_algebra)
_per_generator("laws.9b", _star_law)
_per_generator("laws.antipode", _antipode_action)


@_check("structure", "laws.star_involution", "double")
def _star_involution(ctx):
    D = ctx.double
    cases = [DoubleElement.pure(u, f) for u in _gens_and_one(ctx.U) for f in _gens_and_one(ctx.F)]
    return _all(cases, lambda x: (D.double_star(D.double_star(x)), x))


@_check("structure", "laws.antipode_compact", "double")
def _antipode_compact(ctx):
    D = ctx.double
    cases = [(u, f, h) for u in _gens_and_one(ctx.U) for f in _gens_and_one(ctx.F) for h in _sphere_h(ctx)]
    return _all(
        cases,
        lambda c: (
            D.act_double(D.double_antipode(DoubleElement.pure(c[0], c[1])), c[2]),
            D.straighten_product_action(antipode(c[1]), antipode_inv(c[0]), c[2]),
        ),
    )


@_check("structure", "laws.star_compact", "double")
def _star_compact(ctx):
    D = ctx.double
    cases = [(u, f, h) for u in _gens_and_one(ctx.U) for f in _gens_and_one(ctx.F) for h in _sphere_h(ctx)]
    return _all(
        cases,
        lambda c: (
            D.act_double(D.double_star(DoubleElement.pure(c[0], c[1])), c[2]),
            D.straighten_product_action(c[1].star(), c[0].star(), c[2]),
        ),
    )


for _u in ("k", "kinv", "e", "es"):
    for _f in ("a", "as", "b", "bs"):
        _check("structure", f"laws.cross.{_u}.{_f}", "double")(
            (lambda u, f: lambda ctx: _all(
                _sphere_h(ctx), lambda h: ctx.double.cross_relation_sides(ctx.U.gen(u), ctx.F.gen(f), h)
            ))(_u, _f)
        )


@_check("structure", "laws.action.U", "uq|funq")
def _action_u(ctx):
    D = ctx.double
    gens = [ctx.U.gen(g) for g in ("k", "e", "es")]
    cases = [(u, v, h) for u in gens for v in gens for h in _sphere_h(ctx)]
    return _all(cases, lambda c: (D.act_U(c[0] * c[1], c[2]), D.act_U(c[0], D.act_U(c[1], c[2]))))


@_check("structure", "laws.action.F", "funq")
def _action_f(ctx):
    D = ctx.double
    gens = [ctx.F.gen(g) for g in ("a", "b")]
    cases = [(f, g, h) for f in gens for g in gens for h in _sphere_h(ctx)]
    return _all(cases, lambda c: (D.act_F(c[0] * c[1], c[2]), D.act_F(c[0], D.act_F(c[1], c[2]))))


def law_failures(D: QuantumDouble) -> int:
    """Failures of the convention-sensitive laws of the double on generators."""
    F, U = D.F, D.U
    hs = [F.gen(g) for g in SPHERE_GENERATORS]
    failures = 0
    for x in D.generators().values():
        for f in hs:
            for h in hs:
                lhs, rhs = D.module_algebra_sides(x, f, h)
                failures += lhs != rhs
            left, right, expected = D.antipode_law_sides(x, f)
            failures += left != expected or right != expected
    for u in [U.gen(g) for g in U.generators]:
        for f in [F.gen(g) for g in F.generators]:
            for h in hs:
                failures += not D.check_cross_relation(u, f, h)
    return failures


@_check("structure", "laws.sweedler_convention", "double")
def _convention(ctx):
    cop = law_failures(QuantumDouble(ctx.pairing, u_sweedler="cop"))
    plain = law_failures(QuantumDouble(ctx.pairing, u_sweedler="plain"))
    ok = cop == 0 and plain > 0
    return ok, f"cop: {cop} failures", f"plain: {plain} failures", "" if ok else "expected exactly the coopposite reading to hold"


# limits --------------------------------------------------------------------


def _limit(ctx, name: str, h) -> ClassicalElement:
    if name in AN_NAMES:
        return quantum_limit_an(name, h, ctx.double)
    return quantum_limit_su2(name, h, ctx.double)


def _oracle(name: str, h: ClassicalElement) -> ClassicalElement:
    if name == "-R3":
        return classical_act(derivations()["R3"], h) * -1
    return classical_act(derivations()[name], h)


_TAG = {name: "15a" for name in SU2_NAMES} | {name: "15b" for name in AN_NAMES}

for _name in SU2_NAMES + AN_NAMES:
    for _g in SPHERE_GENERATORS:
        _check("limits", f"{_TAG[_name]}.{_name}.{_g}", "classical")(
            (lambda n, g: lambda ctx: _equal(
                _limit(ctx, n, ctx.F.gen(g)), _oracle(n, ClassicalElement.generator(g))
            ))(_name, _g)
        )
    _check("limits", f"limits.degree2.{_name}", "classical")(
        (lambda n: lambda ctx: _all(
            [w for w in _monomial_names(2)],
            lambda w: (_limit(ctx, n, monomial_element(w, ctx.double)), _oracle(n, monomial_classical(w))),
        ))(_name)
    )
    _check("limits", f"limits.leibniz.{_name}", "classical")(
        (lambda n: lambda ctx: _all(
            [(f, h) for f in SPHERE_GENERATORS for h in SPHERE_GENERATORS],
            lambda c: (
                _limit(ctx, n, ctx.F.gen(c[0]) * ctx.F.gen(c[1])),
                _limit(ctx, n, ctx.F.gen(c[0])) * ClassicalElement.generator(c[1])
                + ClassicalElement.generator(c[0]) * _limit(ctx, n, ctx.F.gen(c[1])),
            ),
        ))(_name)
    )


def _monomial_names(degree: int):
    out = [()]
    frontier = [()]
    for _ in range(degree):
        frontier = [w + (g,) for w in frontier for g in SPHERE_GENERATORS]
        out += frontier
    return out


for _g in SPHERE_GENERATORS:
    _check("limits", f"limits.kinv.{_g}", "classical")(
        (lambda g: lambda ctx: _equal(_limit(ctx, "-R3", ctx.F.gen(g)), _oracle("-R3", ClassicalElement.generator(g))))(_g)
    )


NUMERIC_OFFSETS = (1e-6, -1e-6)
NUMERIC_RTOL = 1e-4
NUMERIC_ATOL = 1e-4  # used when the exact coefficient is zero


def _numerator(ctx, name: str, h: Element) -> tuple[Element, str]:
    if name in AN_NAMES:
        return quantum_an_numerator(name, h, ctx.double), "lnq"
    return quantum_su2_numerator(name, h, ctx.double)


def numeric_deviation(ctx, name: str, h: Element) -> float:
    """Largest scaled deviation between float evaluation near q = 1 and the exact limit."""
    x, mode = _numerator(ctx, name, h)
    poly = ctx.sphere(x)
    exact = to_classical(poly, Scalar.limit_div_lnq if mode == "lnq" else Scalar.eval_at_one)
    worst = 0.0
    for offset in NUMERIC_OFFSETS:
        q = 1.0 + offset
        for key in set(poly.terms) | set(exact.terms):
            c = poly.terms.get(key)
            value = 0j if c is None else c.evaluate(q)
            if mode == "lnq":
                value /= math.log(q)
            target = complex(exact.terms[key]) if key in exact.terms else 0j
            if target:
                worst = max(worst, abs(value - target) / abs(target) / NUMERIC_RTOL)
            else:
                worst = max(worst, abs(value) / NUMERIC_ATOL)
    return worst


for _name in SU2_NAMES + AN_NAMES:
    _check("limits", f"limits.numeric.{_name}", "classical")(
        (lambda n: lambda ctx: (
            lambda worst: (worst < 1, f"scaled deviation {worst:.3g}", "< 1", "")
        )(max(numeric_deviation(ctx, n, ctx.F.gen(g)) for g in SPHERE_GENERATORS)))(_name)
    )


for _f in ("a", "as", "b", "bs"):
    for _g in SPHERE_GENERATORS:
        # at q = 1 the adjoint action degenerates to eps(f) h
        _check("limits", f"remark1.{_f}.{_g}", "funq")(
            (lambda f, g: lambda ctx: _equal(
                to_classical(ctx.sphere(ctx.double.act_F(ctx.F.gen(f), ctx.F.gen(g))), Scalar.eval_at_one),
                ClassicalElement.generator(g) * _classical_value(counit(ctx.F.gen(f))),
            ))(_f, _g)
        )


def _classical_value(c: Scalar):
    return ClassicalElement.constant(c.eval_at_one())


# brackets ------------------------------------------------------------------

BRACKETS = {
    "su2.R1.R2": ("R1", "R2", "R3", 1),
    "su2.R2.R3": ("R2", "R3", "R1", 1),
    "su2.R3.R1": ("R3", "R1", "R2", 1),
    "17.T0.T1": ("T0", "T1", "T1", -1),
    "17.T0.T2": ("T0", "T2", "T2", -1),
    "17.T1.T2": ("T1", "T2", None, 0),
}

for _key, (_x, _y, _z, _sign) in BRACKETS.items():
    _check("brackets", f"brackets.{_key}", "classical")(
        (lambda x, y, z, sign: lambda ctx: (
            lambda ds: (
                lambda got, want: (got == want, str(got), str(want), "")
            )(
                derivation_bracket(ds[x], ds[y]),
                ds[z].scale(sign) if z else ds[x].scale(0, "0"),
            )
        )(derivations()))(_x, _y, _z, _sign)
    )


@_check("brackets", "brackets.tangent", "classical")
def _tangent(ctx):
    return _all(sorted(derivations()), lambda n: (derivations()[n].preserves_sphere(), True))


@_check("brackets", "brackets.antisymmetry", "classical")
def _antisymmetry(ctx):
    ds = derivations()
    return _all(sorted(ds), lambda n: (derivation_bracket(ds[n], ds[n]).is_zero(), True))


# runner --------------------------------------------------------------------


def check_names(scope: str = "all") -> list[str]:
    scope = SCOPE_ALIASES.get(scope, scope)
    return sorted(name for name, _, s, _ in _REGISTRY if scope == "all" or s == scope)


def run_suite(scope: str = "all", context: Context | None = None) -> Report:
    """Run every check in ``scope`` and return them sorted by name."""
    scope = SCOPE_ALIASES.get(scope, scope)
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    ctx = context or Context()
    checks = []
    for name, presentation, s, fn in _REGISTRY:
        if scope != "all" and s != scope:
            continue
        try:
            result = fn(ctx)
        except Exception as exc:  # a broken system must surface as a failed check
            result = (False, f"error: {type(exc).__name__}", "", str(exc))
        ok, lhs, rhs, *rest = result
        checks.append(Check(name, "pass" if ok else "fail", lhs, rhs, presentation, rest[0] if rest else ""))
    checks.sort(key=lambda c: c.name)
    return Report(scope, tuple(checks))
