from fractions import Fraction
from math import comb

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import forms, polys, rings

from freeext.exactfield import GF
from freeext.ring import (
    DualPoly,
    ParseError,
    Poly,
    RingMismatchError,
    RingSpec,
    contract,
    differentiate,
    dual_mul,
    embed,
    from_derivative_basis,
    t_power,
    to_derivative_basis,
)

R = RingSpec.standard("x, y")
S = RingSpec(("x", "y", "t"), (1, 1, 2), has_t=True)
SETTINGS = settings(deadline=None, suppress_health_check=list(HealthCheck), max_examples=60)


def test_parse_and_print_roundtrip():
    p = R.poly("x^2 - 3*x*y + 1/2*y^2")
    assert str(p) == "x^2 - 3*x*y + 1/2*y^2"
    assert R.poly(str(p)) == p
    F = R.dual("X^[3]*Y + 2*X*Y")
    assert R.dual(str(F)) == F


def test_parse_error_column():
    with pytest.raises(ParseError) as exc:
        R.poly("x + * y")
    assert exc.value.column == 5
    with pytest.raises(ParseError):
        R.poly("x + w")


def test_divided_power_product():
    X = R.dual("X")
    assert X * X == R.dual("2*X^[2]")
    assert R.dual("X^[2]") * R.dual("X^[3]") == R.dual("10*X^[5]")
    assert dual_mul(R.dual("X"), R.dual("Y")) == R.dual("X*Y")


def test_contraction():
    assert contract(R.poly("x"), R.dual("X^[3]")) == R.dual("X^[2]")
    assert contract(R.poly("y"), R.dual("X^[3]")).is_zero()
    assert contract(R.poly("x^2 + y^2"), R.dual("X^[2] + Y^[2]")) == R.dual("2")


def test_weighted_monomials():
    assert S.dim(2) == 4  # x^2, xy, y^2, t
    assert S.monomials(0) == [(0, 0, 0)]
    assert S.dim(-1) == 0
    assert S.t_weight == 2 and S.base() == R
    assert R.with_t(2) == S


@given(st.integers(1, 4), st.integers(0, 6))
def test_standard_monomial_count(n, d):
    spec = RingSpec(tuple(f"x{i}" for i in range(n)))
    assert spec.dim(d) == comb(n + d - 1, d)


def test_t_must_exist_for_t_helpers():
    with pytest.raises(ValueError):
        R.t_index
    with pytest.raises(ValueError):
        S.with_t()


def test_embed_and_t_power():
    F = R.dual("X*Y")
    G = embed(F, S)
    assert G == S.dual("X*Y")
    assert t_power(S, 2) == S.dual("T^[2]")
    assert t_power(S, 2, dual=False) == S.poly("t^2")


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        R.poly("x") + S.poly("x")


def test_derivative_basis_roundtrip():
    F = R.dual("X^[3]*Y^[2] - X*Y")
    P = to_derivative_basis(F)
    assert P.terms[(3, 2)] == Fraction(1, 12)
    assert from_derivative_basis(P) == F
    # partial derivatives on the ordinary basis agree with contraction
    g = R.poly("x*y")
    assert from_derivative_basis(differentiate(g, P)) == contract(g, F)


def test_reduce_mod():
    F = R.dual("6*X^[2] + 5*Y^[2]").reduce_mod(5)
    assert F.spec.field == GF(5)
    assert F == F.spec.dual("X^[2]")


def test_homogeneity():
    assert R.poly("x^2 + y").weighted_degree() is None
    assert S.poly("t + x*y").weighted_degree() == 2
    parts = R.poly("x^2 + y + 1").homogeneous_components()
    assert sorted(parts) == [0, 1, 2]


@SETTINGS
@given(st.data())
def test_contraction_is_a_module_action(data):
    spec = data.draw(rings)
    f = data.draw(polys(spec, data.draw(st.integers(0, 2))))
    g = data.draw(polys(spec, data.draw(st.integers(0, 2))))
    F = data.draw(forms(spec, data.draw(st.integers(0, 5))))
    assert contract(f * g, F) == contract(f, contract(g, F))
    assert contract(f + g, F) == contract(f, F) + contract(g, F)


@SETTINGS
@given(st.data())
def test_divided_power_product_is_commutative_and_associative(data):
    spec = data.draw(rings)
    A, B, C = (data.draw(forms(spec, data.draw(st.integers(0, 3)))) for _ in range(3))
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)


@SETTINGS
@given(st.data())
def test_poly_string_roundtrip(data):
    spec = data.draw(rings)
    p = data.draw(polys(spec, data.draw(st.integers(0, 4))))
    F = data.draw(forms(spec, data.draw(st.integers(0, 4))))
    assert spec.poly(str(p)) == p
    assert spec.dual(str(F)) == F


@SETTINGS
@given(st.data())
def test_vector_roundtrip(data):
    spec = data.draw(rings)
    d = data.draw(st.integers(0, 4))
    F = data.draw(forms(spec, d))
    assert DualPoly.from_vector(spec, d, F.to_vector(d)) == F
    p = data.draw(polys(spec, d))
    assert Poly.from_vector(spec, d, p.to_vector(d)) == p


def test_derivative_basis_small_characteristic():
    F = RingSpec.standard("x", GF(3)).dual("X^[3]")
    with pytest.raises(ValueError, match="3!"):
        to_derivative_basis(F)


@SETTINGS
@given(st.data())
def test_differentiation_matches_contraction(data):
    spec = data.draw(rings)
    F = data.draw(forms(spec, data.draw(st.integers(0, 5))))
    g = data.draw(polys(spec, data.draw(st.integers(0, 3))))
    assert from_derivative_basis(to_derivative_basis(F)) == F
    assert from_derivative_basis(differentiate(g, to_derivative_basis(F))) == contract(g, F)
