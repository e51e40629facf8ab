import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import extension_inputs, forms, rings

from freeext.duality import annihilator
from freeext.extension import (
    DegreeMismatchError,
    ExtensionInput,
    ShapeError,
    a_hilbert,
    admissible_G_dimension,
    assemble_F,
    check_corollary,
    check_necessary,
    check_sufficient,
    expand_in_T,
    full_report,
    lift_element,
    nested_ideals,
    pbi_dual_generator,
    square_kills,
    square_within,
)
from freeext.ring import DualPoly, RingSpec, contract

R = RingSpec.standard("x, y")
SETTINGS = settings(deadline=None, suppress_health_check=list(HealthCheck), max_examples=40)


def test_input_validation():
    with pytest.raises(DegreeMismatchError):
        ExtensionInput(2, R.dual("X*Y"), [R.dual("X^[2]")])
    with pytest.raises(ValueError):
        ExtensionInput(2, R.dual("X*Y"), [R.dual("X^[3]"), R.dual("X^[4]")])
    with pytest.raises(ValueError):
        ExtensionInput(0, R.dual("X"))
    S = R.with_t()
    with pytest.raises(ValueError):
        ExtensionInput(2, S.dual("X"))
    with pytest.raises(DegreeMismatchError):
        ExtensionInput(2, R.dual("X + Y^[2]"))
    inp = ExtensionInput(3, R.dual("X*Y"))
    assert [G.is_zero() for G in inp.gs] == [True, True]


def test_weighted_degrees():
    inp = ExtensionInput(2, R.dual("X*Y"), [R.dual("X^[3]*Y")], t_weight=2)
    assert inp.S.weights == (1, 1, 2)
    assert assemble_F(inp).weighted_degree() == 4
    with pytest.raises(DegreeMismatchError):
        ExtensionInput(2, R.dual("X*Y"), [R.dual("X^[3]")], t_weight=2)


def test_a_hilbert():
    assert a_hilbert(3) == [1, 1, 1]
    assert a_hilbert(3, 2) == [1, 0, 1, 0, 1]
    assert a_hilbert(1, 5) == [1]


def test_assemble_and_expand():
    inp = ExtensionInput(3, R.dual("X*Y"), [R.dual("X^[3]"), R.dual("X*Y^[3]")])
    F = assemble_F(inp)
    assert F == inp.S.dual("T^[2]*X*Y + T*X^[3] + X*Y^[3]")
    back = expand_in_T(F)
    assert back.n == 3 and back.fb == inp.fb and back.gs == inp.gs


@SETTINGS
@given(extension_inputs(max_n=3, max_total=5))
def test_expand_inverts_assemble(inp):
    back = expand_in_T(assemble_F(inp))
    assert back.n == inp.n
    assert back.forms() == inp.forms()


def test_corollary_shape():
    inp = ExtensionInput(3, R.dual("X*Y"), [R.dual("X^[3]"), R.dual("X*Y^[3]")])
    with pytest.raises(ShapeError):
        check_corollary(inp)
    ok = ExtensionInput(2, R.dual("X*Y"), [R.dual("X^[3]")])
    assert check_corollary(ok)


def test_example_chain_and_certificates():
    inp = ExtensionInput(3, R.dual("X*Y"), [R.dual("X^[3]"), R.dual("X*Y^[3]")])
    chain = nested_ideals(inp)
    assert [I.is_unit() for I in chain] == [False, False, True]
    assert all(c.holds for c in check_sufficient(inp, chain))
    assert check_sufficient(inp, chain)[-1].vacuous
    assert all(c.holds for c in check_necessary(inp))


def test_lift_witnesses_annihilate():
    inp = ExtensionInput(3, R.dual("X*Y"), [R.dual("X^[3]"), R.dual("X*Y^[3]")])
    F = assemble_F(inp)
    for g in annihilator(inp.fb).generator_polys():
        lift = lift_element(inp, g)
        assert lift.lifts
        assert contract(lift.witness, F).is_zero()
        assert str(lift.witness.substitute_t_zero()) == str(g)


def test_non_lift():
    inp = ExtensionInput(3, R.dual("X^[2]"), [R.dual("X^[2]*Y")])
    lift = lift_element(inp, R.poly("y"))
    assert not lift.lifts and lift.to_json()["witness"] is None
    with pytest.raises(ValueError):
        lift_element(inp, R.poly("y + x^2"))


def test_square_conditions():
    IB = annihilator(R.dual("X*Y"))
    assert square_kills(IB, R.dual("X^[3]"))
    assert not square_kills(IB, R.dual("X^[2]*Y^[2]"))
    assert square_within(IB, R.dual("X^[2]*Y^[2]"), R.dual("X*Y"))
    assert square_kills(IB, DualPoly(R, {}))


def test_report_json_schema():
    rep = full_report(ExtensionInput(2, R.dual("X*Y"), [R.dual("X^[3]")]))
    data = json.loads(rep.to_json())
    assert set(data) == {"n", "weights", "F", "F_B", "G", "ann", "hilbert", "certificates", "free"}
    assert set(data["hilbert"]) == {"A", "B", "C", "tensor"}
    assert set(data["certificates"]) == {"sufficient", "necessary", "corollary", "lifting", "dimension"}
    assert data["free"] is True and data["certificates"]["corollary"] is True
    assert data["hilbert"]["C"] == [1, 3, 3, 1]


def test_trivial_extension_is_tensor_product():
    rep = full_report(ExtensionInput(3, R.dual("X^[2]*Y")))
    assert rep.free
    assert rep.hilbert_c == rep.tensor


def test_pbi_generator():
    F = pbi_dual_generator(R.dual("X^[2] + Y^[2]"), [R.poly("y"), R.poly("x^2")], 1)
    assert F == F.spec.dual("(X^[2] + Y^[2])*T + Y*T^[2] + T^[3]")
    with pytest.raises(DegreeMismatchError):
        pbi_dual_generator(R.dual("X^[2]"), [R.poly("x^2")], 1)


def test_admissible_dimension():
    assert admissible_G_dimension(R.dual("X*Y")) == 4
    # everything of degree j_B + 1 is admissible when (I_B)^2 starts higher
    assert admissible_G_dimension(R.dual("X^[3]*Y^[3]")) == R.dim(7)


@SETTINGS
@given(st.data())
def test_corollary_g_from_admissible_space_is_free(data):
    from strategies import admissible

    spec = data.draw(rings)
    fb = data.draw(forms(spec, data.draw(st.integers(1, 3))))
    G = data.draw(admissible(fb, fb.weighted_degree() + 1))
    rep = full_report(ExtensionInput(2, fb, [G]))
    assert rep.free and rep.corollary
