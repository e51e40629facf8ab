import pytest

from freeext.algebra import from_dual_generator
from freeext.duality import ideal_from_generators, in_derivates
from freeext.fixtures import (
    coinvariant_case,
    elementary_symmetric,
    formal_mul,
    powered_elementary,
    reflection_case,
    vandermonde_dual,
)
from freeext.ring import RingSpec

R3 = RingSpec.standard("x1, x2, x3")


def test_elementary_symmetric():
    assert elementary_symmetric(R3, 2) == R3.poly("x1*x2 + x1*x3 + x2*x3")
    assert elementary_symmetric(R3, 1, ["x2"]) == R3.poly("x2")
    assert powered_elementary(R3, 1, 3) == R3.poly("x1^3 + x2^3 + x3^3")
    with pytest.raises(ValueError):
        elementary_symmetric(R3, 4)


def test_vandermonde():
    F2 = vandermonde_dual(2)
    assert F2 == F2.spec.dual("X1 - X2")
    F4 = vandermonde_dual(4)
    assert F4.weighted_degree() == 6
    assert from_dual_generator(F4).length == 24
    with pytest.raises(ValueError):
        vandermonde_dual(1)


def test_formal_product():
    R = RingSpec.standard("x")
    assert formal_mul(R.dual("X"), R.dual("X")) == R.dual("X^[2]")
    assert R.dual("X") * R.dual("X") == R.dual("2*X^[2]")


@pytest.mark.parametrize("args", [("S", 3), ("S", 4), ("G", 2, 1, 2, 2), ("G", 4, 1, 2, 2)])
def test_coinvariant_ideals_are_complete_intersections(args):
    case = coinvariant_case(*args)
    C = from_dual_generator(case.inp.S.dual(str(_assembled(case))))
    J = ideal_from_generators(case.inp.S, case.ideal_c, C.ideal.top() + 2)
    assert C.ideal == J
    for i in range(1, case.inp.n):
        assert in_derivates(case.inp.G(i - 1), case.inp.G(i))


def _assembled(case):
    from freeext.extension import assemble_F

    return assemble_F(case.inp)


def test_parameter_bounds():
    with pytest.raises(ValueError):
        coinvariant_case("S", 7)
    with pytest.raises(ValueError):
        coinvariant_case("G", 5, 1, 5, 3)
    with pytest.raises(ValueError):
        reflection_case(4, 2, 2, 2)
    with pytest.raises(ValueError):
        coinvariant_case("H", 3)


def test_reflection_weights():
    inp = reflection_case(3, 1, 3, 3)
    assert inp.n == 3 and inp.t_weight == 3
