from fractions import Fraction
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from freeext.exactfield import GF, QQ
from freeext.linalg import Matrix, ParamMatrix, ParamPoly, Subspace, generic_rank, kernel_basis, rank, rref, solve

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_and_rank():
    M = Matrix(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, r, piv = rref(M)
    assert r == 2 and piv == [0, 1]
    assert rank(M) == 2
    assert rank(Matrix.identity(QQ, 4)) == 4
    assert rank(Matrix.zeros(QQ, 3, 2)) == 0


def test_solve():
    M = Matrix(QQ, [[2, 1], [1, 3]])
    x = solve(M, [3, 5])
    assert M.apply(x) == [3, 5]
    assert solve(Matrix(QQ, [[1, 1], [1, 1]]), [1, 2]) is None


def test_over_prime_field():
    M = Matrix(GF(3), [[1, 2], [2, 1]])  # determinant -3 = 0 mod 3
    assert rank(M) == 1
    assert rank(Matrix(QQ, [[1, 2], [2, 1]])) == 2


@settings(deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(rows):
    M = Matrix(QQ, rows)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.ncols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))


@settings(deadline=None)
@given(matrices(), st.integers(0, 2**32))
def test_subspace_operations(rows, seed):
    n = len(rows[0])
    V = Subspace(QQ, n, rows)
    assert V.dim == rank(Matrix(QQ, rows))
    for r in rows:
        assert V.contains(r)
    perp = V.orthogonal()
    assert len(perp) == n - V.dim
    for w in perp:
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, w)) == 0
    rng = random.Random(seed)
    v = [rng.randint(-3, 3) for _ in range(n)]
    red = V.reduce(v)
    assert V.contains([a - b for a, b in zip(v, red)])
    assert V <= Subspace.full(QQ, n)
    assert len(V.nonpivots()) == n - V.dim


def test_generic_rank_beats_special_points():
    # M(c) = [[c0, c1], [c1, c0]] is singular on c0 = +-c1 but generically invertible
    M0 = Matrix(QQ, [[1, 0], [0, 1]])
    M1 = Matrix(QQ, [[0, 1], [1, 0]])
    P = ParamMatrix.from_linear([M0, M1])
    assert generic_rank(P) == 2
    assert rank(P.evaluate([1, 1])) == 1
    # a matrix of rank one for all parameter values
    N = ParamMatrix.from_linear([Matrix(QQ, [[1, 1], [1, 1]]), Matrix(QQ, [[2, 2], [2, 2]])])
    assert generic_rank(N) == 1


def test_param_poly_arithmetic():
    a = ParamPoly.param(QQ, 2, 0)
    b = ParamPoly.param(QQ, 2, 1)
    p = (a + b) * (a - b)
    assert p.exquo(a + b) == a - b
    assert p.evaluate([3, 1]) == 8


@settings(deadline=None, max_examples=40)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32))
def test_generic_rank_dominates_evaluations(m, r, c, seed):
    rng = random.Random(seed)
    mats = [Matrix(QQ, [[rng.randint(-2, 2) for _ in range(c)] for _ in range(r)]) for _ in range(m)]
    P = ParamMatrix.from_linear(mats)
    g = generic_rank(P)
    for _ in range(5):
        pt = [rng.randint(-5, 5) for _ in range(m)]
        assert rank(P.evaluate(pt)) <= g
    # a random point of large height attains the generic rank with overwhelming probability
    assert any(rank(P.evaluate([rng.randint(-10**6, 10**6) for _ in range(m)])) == g for _ in range(3))
