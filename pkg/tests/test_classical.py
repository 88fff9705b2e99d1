import pytest

from qlorentz.classical import (
    AN_TABLE,
    SU2_TABLE,
    ClassicalElement,
    classical_act,
    derivation_bracket,
    derivations,
    quantum_limit_an,
    quantum_limit_su2,
)
from qlorentz.coeff import DivergentLimitError, GaussianRational

C = ClassicalElement.parse


def test_classical_act_examples():
    ds = derivations()
    assert classical_act(ds["R3"], C("B")) == C("i*B")
    assert classical_act(ds["T0"], C("A")) == C("2*A*(A - 1)")
    for d in ds.values():
        assert classical_act(d, C("1")) == C("0")


def test_sphere_relation_is_built_in():
    assert C("B*Bs") == C("A - A^2")
    assert C("star(B)") == C("Bs") and C("star(i*A)") == C("-i*A")


def test_leibniz():
    ds = derivations()
    p, r = C("A*B + Bs^2"), C("B - 3*A")
    for d in ds.values():
        assert d(p * r) == d(p) * r + p * d(r)


@pytest.mark.parametrize("name, h, expected", [
    ("R3", "B", "i*B"),
    ("R1+iR2", "B", "i*(2*A - 1)"),
    ("R3", "A", "0"),
])
def test_su2_limit_examples(D, name, h, expected):
    assert quantum_limit_su2(name, h, D) == C(expected)


@pytest.mark.parametrize("name, h, expected", [
    ("T0", "B", "B*(2*A - 1)"),
    ("iT1+T2", "Bs", "-2*A^2"),
    ("iT1-T2", "A", "-2*A*Bs"),
])
def test_an_limit_examples(D, name, h, expected):
    assert quantum_limit_an(name, h, D) == C(expected)


@pytest.mark.parametrize("name", sorted(SU2_TABLE))
def test_su2_limits_match_table(D, name):
    for g, value in SU2_TABLE[name].items():
        assert quantum_limit_su2(name, g, D) == C(value)


@pytest.mark.parametrize("name", sorted(AN_TABLE))
def test_an_limits_match_table(D, name):
    for g, value in AN_TABLE[name].items():
        assert quantum_limit_an(name, g, D) == C(value)


def test_kinv_gives_minus_r3(D):
    ds = derivations()
    for g in ("A", "B", "Bs"):
        assert quantum_limit_su2("-R3", g, D) == classical_act(ds["R3"], C(g)) * -1


def test_degeneration_of_the_adjoint_action(D, F):
    # b |> h vanishes at q = 1; only b / ln q has a limit
    for g in ("A", "B", "Bs"):
        poly = D.express_in_sphere_generators(D.act_F(F.gen("b"), F.gen(g)))
        assert all(c.eval_at_one() == GaussianRational(0) for c in poly.terms.values())


def test_limit_errors(D, F):
    # a |> h does not vanish at q = 1, so dividing by ln q diverges
    poly = D.express_in_sphere_generators(D.act_F(F.gen("a"), F.gen("B")))
    with pytest.raises(DivergentLimitError):
        [c.limit_div_lnq() for c in poly.terms.values()]
    with pytest.raises(KeyError):
        quantum_limit_an("T9", "B", D)


def test_brackets():
    ds = derivations()
    R1, R2, R3 = ds["R1"], ds["R2"], ds["R3"]
    assert derivation_bracket(R1, R2) == R3
    assert derivation_bracket(R2, R3) == R1
    assert derivation_bracket(R3, R1) == R2
    T0, T1, T2 = ds["T0"], ds["T1"], ds["T2"]
    assert derivation_bracket(T0, T1) == T1.scale(-1)
    assert derivation_bracket(T0, T2) == T2.scale(-1)
    assert derivation_bracket(T1, T2).is_zero()
    assert derivation_bracket(T0, T0).is_zero()


def test_all_derivations_are_tangent():
    assert all(d.preserves_sphere() for d in derivations().values())
