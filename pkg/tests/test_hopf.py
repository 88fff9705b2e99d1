import pytest

from qlorentz.coeff import ONE, ZERO, Scalar
from qlorentz.hopf import TensorElement, antipode, antipode_inv, coproduct, counit, iterated_coproduct

sc = Scalar.parse
T = TensorElement.pure


def test_coproduct_generators(F, U):
    a, b, bs = F.gen("a"), F.gen("b"), F.gen("bs")
    assert coproduct(a) == T(a, a) - T(b, bs) * sc("q")
    assert coproduct(U.gen("k")) == T(U.gen("k"), U.gen("k"))
    assert coproduct(F.one()) == T(F.one(), F.one())


def test_coproduct_of_product(F):
    a, as_, b, bs = (F.gen(g) for g in ("a", "as", "b", "bs"))
    expected = (T(a, a) - T(b, bs) * sc("q")) * (T(b, as_) + T(a, b))
    assert coproduct(a * b) == expected


def test_derived_starred_coproducts(F, U):
    as_, b, bs = F.gen("as"), F.gen("b"), F.gen("bs")
    assert coproduct(as_) == T(as_, as_) - T(bs, b) * sc("q")
    k, kinv, es = U.gen("k"), U.gen("kinv"), U.gen("es")
    assert coproduct(es) == T(es, k) + T(kinv, es)
    assert coproduct(kinv) == T(kinv, kinv)


def test_iterated_coproduct(U):
    k, kinv, e = U.gen("k"), U.gen("kinv"), U.gen("e")
    assert iterated_coproduct(k, 3) == T(k, k, k)
    assert iterated_coproduct(e, 3) == T(e, k, k) + T(kinv, e, k) + T(kinv, kinv, e)
    assert iterated_coproduct(e, 1) == e


def test_counit(F, U):
    assert counit(F.gen("a")) == ONE
    assert counit(F.parse("a*b")) == ZERO
    assert counit(F.one()) == ONE
    assert counit(U.parse("k^-3 + e")) == ONE


def test_antipode(F, U):
    b = F.gen("b")
    assert antipode(b) == -sc("q") * b
    assert antipode(F.parse("a*b")) == F.parse("-as*b")
    assert antipode(antipode(b)) == sc("q^2") * b  # S is not involutive
    assert antipode_inv(b) == -sc("q^-1") * b
    assert antipode(U.gen("k")) == U.gen("kinv")


@pytest.mark.parametrize("name", ["funq", "uq"])
def test_hopf_axioms_on_short_words(name, F, U):
    P = F if name == "funq" else U
    for w in P.words(2):
        x = P.normal_form(w)
        d = coproduct(x)
        e = P.scalar(counit(x))
        assert d.apply(antipode, lambda y: y).multiply() == e
        assert d.apply(lambda y: y, antipode).multiply() == e
        assert d.apply(lambda y: P.scalar(counit(y)), lambda y: y).multiply() == x
        assert coproduct(x.star()) == d.star()
        assert counit(x.star()) == counit(x).conjugate()
        assert antipode(antipode(x).star()).star() == x
        assert antipode(antipode_inv(x)) == x == antipode_inv(antipode(x))


def test_tensor_printing(U):
    t = coproduct(U.gen("e"))
    assert str(t) == "kinv (x) e + e (x) k"
    assert t.pretty() == "k^-1 ⊗ e + e ⊗ k"
