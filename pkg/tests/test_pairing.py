import pytest

from qlorentz.coeff import ONE, ZERO, Scalar
from qlorentz.hopf import antipode
from qlorentz.pairing import PAIRING_TABLE, Pairing, PairingError, check_star_compat, pair

sc = Scalar.parse


def test_pairing_examples(U, F):
    assert pair(U.gen("k"), F.gen("a")) == sc("q^(1/2)")
    assert pair(U.gen("k"), F.one()) == ONE
    assert pair(U.gen("k"), F.parse("a*b")) == ZERO
    assert pair(U.gen("e"), F.parse("a*bs")) == sc("-q^(-3/2)")


def test_table_and_derived_inverse_row(P):
    rows = P.table_rows()
    assert rows[("k", "a")] == sc("q^(1/2)")
    assert rows[("k", "as")] == sc("q^(-1/2)")
    assert rows[("e", "bs")] == sc("-q^-1")
    assert rows[("es", "b")] == ONE
    assert rows[("kinv", "a")] == sc("q^(-1/2)")
    assert rows[("kinv", "as")] == sc("q^(1/2)")
    nonzero = {key for key, v in rows.items() if v}
    assert nonzero == {("k", "a"), ("k", "as"), ("e", "bs"), ("es", "b"), ("kinv", "a"), ("kinv", "as")}


def test_inverse_row_consistency(P, U, F):
    k, kinv = U.index["k"], U.index["kinv"]
    for g in range(4):
        assert P.pair_words((k, kinv), (g,)) == F.hopf.counit_table[g]
        assert P.pair_words((kinv, k), (g,)) == F.hopf.counit_table[g]


def test_inconsistent_table_rejected(U, F):
    table = PAIRING_TABLE[:1] + (("k", "as", "q"),) + PAIRING_TABLE[2:]
    with pytest.raises(PairingError):
        Pairing(U, F, table)


@pytest.mark.parametrize("u, f", [("k", "a"), ("e", "bs"), ("1", "1"), ("es", "b")])
def test_star_compat_examples(U, F, u, f):
    assert check_star_compat(U.parse(u), F.parse(f))


def test_star_compat_all_generator_pairs(P, U, F):
    for u in U.generators:
        for f in F.generators:
            assert P.check_star_compat(U.gen(u), F.gen(f))


def test_two_routes_and_antipode_duality(P, U, F):
    for u in U.normal_words(2):
        for w in F.normal_words(3):
            x, y = U.normal_form(u), F.normal_form(w)
            assert P.pair(x, y) == P.pair_via_fun_coproduct(x, y)
            assert P.pair(antipode(x), y) == P.pair(x, antipode(y))


def test_bilinearity(U, F):
    x, y = U.parse("k + 2*e"), U.parse("q*es")
    f, g = F.parse("a*b"), F.parse("b - as")
    c = sc("q^(1/2) + i")
    assert pair(x + y * c, f) == pair(x, f) + c * pair(y, f)
    assert pair(x, f + g * c) == pair(x, f) + c * pair(x, g)
