import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlorentz.coeff import ONE, Scalar
from qlorentz.ncpoly import ConfluenceError, Element, funq_algebra, normal_form, star

sc = Scalar.parse


# normal forms


def test_normal_form_examples(F, U):
    assert normal_form("b*a", F) == F.parse("q*a*b")
    assert normal_form("as*a", F) == F.parse("1 - q^2*b*bs")
    assert normal_form("es*e", U) == U.parse("e*es + (k^2 - kinv^2)/(q - q^-1)")
    assert normal_form((), F) == F.one()


def test_rules_text(F, U):
    assert "b b* -> b b*" not in F.rules_text()
    assert "a* a -> 1 - q^2 b b*" in F.rules_text()
    assert "e* e -> " + U.element(U.rules[(U.index["es"], U.index["e"])]).pretty() in U.rules_text()


def test_mul_examples(F):
    ab, a = F.parse("a*b"), F.gen("a")
    assert ab * a == F.parse("q*a^2*b")
    # independent reduction: rewrite b a by hand
    assert ab * a == F.gen("a") * (F.gen("b") * a)
    x = F.parse("a - 2*bs")
    assert x * F.one() == x
    b_bs = F.parse("b*bs")
    assert list(b_bs.terms) == [(F.index["b"], F.index["bs"])]


def test_derived_rules(F, U):
    assert F.parse("as*bs") == F.parse("q*bs*as")
    assert F.parse("as*b") == F.parse("q*b*as")
    assert U.parse("k*kinv") == U.one() == U.parse("kinv*k")
    assert U.parse("kinv*e") == U.parse("q*e*kinv")


def test_normal_words_shape(F, U):
    a, as_, b, bs = (F.index[g] for g in ("a", "as", "b", "bs"))
    for w in F.normal_words(5):
        assert not (a in w and as_ in w)
        letters = [{a: 0, as_: 0, b: 1, bs: 2}[g] for g in w]
        assert letters == sorted(letters)
    k, kinv, e, es = (U.index[g] for g in ("k", "kinv", "e", "es"))
    for w in U.normal_words(5):
        assert not (k in w and kinv in w)
        letters = [{k: 0, kinv: 0, e: 1, es: 2}[g] for g in w]
        assert letters == sorted(letters)


def test_defining_relations_vanish(F, U):
    from qlorentz.ncpoly import FUNQ_RELATIONS, UQ_RELATIONS

    for r in FUNQ_RELATIONS:
        assert not F.parse(r)
        assert not F.parse(f"star({r})")
    for r in UQ_RELATIONS:
        assert not U.parse(r)
        assert not U.parse(f"star({r})")


def test_podles_relations(F):
    assert F.parse("A*B") == F.parse("q^2*B*A")
    assert F.parse("A*Bs") == F.parse("q^-2*Bs*A")
    assert F.parse("B*Bs") == F.parse("q^-2*A*(1 - A)")
    assert F.parse("Bs*B") == F.parse("A*(1 - q^2*A)")


def test_randomized_order_confluence(F, U):
    rng = random.Random(7)
    for P in (F, U):
        for _ in range(500):
            word = tuple(rng.randrange(4) for _ in range(rng.randint(0, 6)))
            assert Element(P, P.rewrite_randomized({word: ONE}, rng)) == P.normal_form(word)


def test_confluence_gate():
    with pytest.raises(ConfluenceError) as info:
        funq_algebra({("b", "a"): "2*q*a*b"})
    assert info.value.failures
    broken = funq_algebra({("b", "a"): "2*q*a*b"}, check=False)
    assert broken.overlap_failures


def test_override_must_decrease_order():
    with pytest.raises(ValueError):
        funq_algebra({("b", "a"): "b*a"}, check=False)


# star


def test_star_examples(F):
    assert star(F.parse("a*b")) == F.parse("bs*as")
    assert star(F.parse("i*b")) == F.parse("-i*bs")


def _element(P, draw):
    n = len(P.generators)
    terms = draw(
        st.dictionaries(
            st.lists(st.integers(0, n - 1), max_size=3).map(tuple),
            st.sampled_from(["1", "-2", "q", "i", "q^(1/2) - i", "1/(q + 1)"]),
            max_size=3,
        )
    )
    return P.normal_form({w: sc(c) for w, c in terms.items()})


@st.composite
def fun_pairs(draw):
    from qlorentz.hopf import funq

    F = funq()
    return _element(F, draw), _element(F, draw), _element(F, draw)


@st.composite
def u_pairs(draw):
    from qlorentz.hopf import uq

    U = uq()
    return _element(U, draw), _element(U, draw), _element(U, draw)


@settings(max_examples=30)
@given(st.one_of(fun_pairs(), u_pairs()))
def test_algebra_laws(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x


@given(st.one_of(fun_pairs(), u_pairs()))
def test_print_parse_roundtrip(xyz):
    x = xyz[0]
    assert x.presentation.parse(str(x)) == x
