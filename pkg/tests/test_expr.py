import pytest

from qlorentz.expr import Name, ParseError, Product, Sum, UnknownGeneratorError, parse_tree


def test_sum_of_products_tree():
    tree = parse_tree("q*a*b - b*b")
    assert isinstance(tree, Sum)
    (s1, first), (s2, second) = tree.terms
    assert (s1, s2) == (1, -1)
    assert isinstance(first, Product) and [f.id for f in first.factors] == ["q", "a", "b"]


def test_product_in_uq(U):
    assert isinstance(parse_tree("e*k"), Product)
    assert U.parse("e*k") == U.parse("q*k*e")


def test_unknown_generator_suggests(F, U):
    with pytest.raises(UnknownGeneratorError) as info:
        F.parse("x")
    assert info.value.position == 0
    with pytest.raises(UnknownGeneratorError) as info:
        U.parse("e*kinvv")
    assert info.value.suggestion == "kinv"
    assert info.value.position == 2


@pytest.mark.parametrize("text", ["a*", "(a + b", "a b", "q^(1/3)", "a^(1/2)", "a/b", "3 +* a"])
def test_syntax_errors(F, text):
    with pytest.raises(ParseError):
        F.parse(text)


def test_star_and_powers(F, U):
    assert F.parse("star(a*b)") == F.parse("bs*as")
    assert F.parse("star(i*b)") == F.parse("-i*bs")
    assert U.parse("k^-2") == U.parse("kinv*kinv")
    assert F.parse("b^3") == F.parse("b*b*b")
    assert isinstance(parse_tree("a"), Name)


def test_scalar_division(F):
    assert F.parse("(q - q^-1)*a/(q - q^-1)") == F.gen("a")
