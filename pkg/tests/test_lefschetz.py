import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import forms, rings

from freeext.algebra import from_dual_generator, quotient
from freeext.duality import ideal_from_generators
from freeext.exactfield import GF
from freeext.lefschetz import conjugate, has_sljt, is_strong_lefschetz, jordan_type, partition_from_ranks
from freeext.ring import RingSpec

R = RingSpec.standard("x, y")


def test_conjugate():
    assert conjugate([1, 2, 1]) == [3, 1]
    assert conjugate([1, 3, 4, 3, 1]) == [5, 3, 3, 1]
    assert conjugate([1, 0, 0, 1, 0, 0, 1]) == [3]
    assert conjugate([]) == []


def test_partition_from_ranks():
    # one block of size 3 and one of size 1: ranks of N^k are 4, 2, 1, 0
    assert partition_from_ranks([4, 2, 1, 0]) == [3, 1]
    assert partition_from_ranks([2, 0]) == [1, 1]


def test_jordan_types():
    A = from_dual_generator(R.dual("X^[2] + Y^[2]"))
    assert jordan_type(A, R.poly("x + y")) == [3, 1]
    assert jordan_type(A, R.poly("x*y")) == [1, 1, 1, 1]
    assert has_sljt(A, R.poly("x + y"))
    with pytest.raises(ValueError):
        jordan_type(A, R.poly("1 + x"))


def test_non_homogeneous_element():
    A = from_dual_generator(R.dual("X^[3]*Y"))
    ell = R.poly("x + y^2")
    assert sum(jordan_type(A, ell)) == A.length


def test_strong_lefschetz_complete_intersection():
    A = from_dual_generator(R.dual("X*Y"))
    res = is_strong_lefschetz(A)
    assert res.holds and res.certificate == "witness"
    assert res.to_json()["hilbert_conjugate"] == [3, 1]


def test_sampled_over_prime_field():
    A = from_dual_generator(RingSpec.standard("x, y", GF(7)).dual("X*Y"))
    res = is_strong_lefschetz(A)
    assert res.holds
    B = from_dual_generator(RingSpec.standard("x, y, z, u, v", GF(7)).dual("X*U^[2] + Y*U*V + Z*V^[2]"))
    res = is_strong_lefschetz(B, samples=3)
    assert not res.holds and res.certificate == "sampled"


def test_vacuous_without_linear_variables():
    T = RingSpec(("t",), (3,), has_t=True)
    A = from_dual_generator(T.dual("T^[2]"))
    assert A.hilbert == [1, 0, 0, 1, 0, 0, 1]
    res = is_strong_lefschetz(A)
    assert not res.holds and res.certificate == "vacuous"
    assert has_sljt(A, T.poly("t"))


def test_monomial_ci_not_sl_in_char_2():
    # (x^2, y^2) in characteristic 2: (x + y)^2 = 0, so no SL element
    spec = RingSpec.standard("x, y", GF(2))
    I = ideal_from_generators(spec, [spec.poly("x^2"), spec.poly("y^2")], 4)
    A = quotient(I)
    assert jordan_type(A, spec.poly("x + y")) == [2, 2]
    assert not is_strong_lefschetz(A).holds


@settings(deadline=None, suppress_health_check=list(HealthCheck), max_examples=30)
@given(st.data())
def test_jordan_type_partitions_length(data):
    spec = data.draw(rings)
    F = data.draw(forms(spec, data.draw(st.integers(1, 4))))
    A = from_dual_generator(F)
    ell = spec.var(0)
    P = jordan_type(A, ell)
    assert sum(P) == A.length
    assert P == sorted(P, reverse=True)
    # P is dominated by the conjugate of H
    Q = conjugate(A.hilbert)
    assert len(P) >= len(Q)
