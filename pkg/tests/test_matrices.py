import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from exotori.errors import DomainError
from exotori.matrices import (
    Matrix,
    Subspace,
    exterior_power,
    is_unipotent,
    kernel,
    matrix_order,
    rank_one_defect,
    smith_normal_form,
    solve_homogeneous_mod,
)
from exotori.scalars import QuadScalar


def E(d, i, j):
    return Matrix.elementary(d, i, j)


@st.composite
def int_matrices(draw, max_size=6, square=False):
    m = draw(st.integers(1, max_size))
    n = m if square else draw(st.integers(1, max_size))
    rows = draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))
    return Matrix(rows)


def test_snf_examples():
    assert smith_normal_form(Matrix.diagonal([2, 4])).S == Matrix.diagonal([2, 4])
    assert smith_normal_form(Matrix([[2, 0], [0, 3]])).S == Matrix.diagonal([1, 6])
    assert smith_normal_form(Matrix.zeros(2)).S == Matrix.zeros(2)


@settings(max_examples=200, deadline=None)
@given(int_matrices())
def test_snf_roundtrip(M):
    r = smith_normal_form(M)
    assert r.U * M * r.V == r.S
    assert abs(r.U.det()) == 1 and abs(r.V.det()) == 1
    m, n = M.shape
    assert all(r.S[i, j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = r.diagonal
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero
    assert all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_snf_matches_sympy(M):
    ours = smith_normal_form(M).diagonal
    theirs = sympy_snf(sympy.Matrix(M.rows), domain=sympy.ZZ)
    theirs = [abs(int(theirs[i, i])) for i in range(min(M.shape))]
    assert sorted(x for x in ours if x) == sorted(x for x in theirs if x)


@settings(max_examples=100, deadline=None)
@given(int_matrices(square=True))
def test_snf_diagonal_product_is_abs_det(M):
    prod = 1
    for x in smith_normal_form(M).diagonal:
        prod *= x
    assert prod == abs(M.det())


def test_snf_is_deterministic():
    M = Matrix([[4, 6, 2], [2, 8, 10], [6, 0, 4]])
    assert smith_normal_form(M) == smith_normal_form(M)


def test_kernel_examples():
    I3 = Matrix.identity(3)
    assert kernel(I3).dim == 0
    assert kernel(Matrix.zeros(3)).dim == 3
    assert kernel(E(3, 1, 2) - I3) == Subspace.coordinate(3, [1, 3])


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_kernel_dimension_and_vectors(M):
    K = kernel(M)
    assert K.dim == M.ncols - M.rank()
    for v in K.basis:
        assert all(x == 0 for x in M.apply(v))


def test_kernel_over_quadratic_field():
    r = QuadScalar.sqrt(-7)
    M = Matrix([[1, r], [r, -7]])
    K = kernel(M)
    assert K.dim == 1
    assert all(x == 0 for x in M.apply(K.basis[0]))


def test_subspace_equality_is_canonical():
    a = Subspace.span((1, 2, 3), (0, 1, 1))
    b = Subspace.span((1, 3, 4), (2, 4, 6))
    assert a == b
    assert a.contains((1, 1, 2))
    assert not a.contains((0, 0, 1))
    assert a.intersect(Subspace.coordinate(3, [1, 2])).dim == 1


def test_unipotent_examples():
    assert is_unipotent(E(3, 1, 2))
    assert not is_unipotent(-Matrix.identity(2))
    assert not is_unipotent(Matrix.diagonal([1, 2]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.sampled_from([1, -1])), max_size=8))
def test_unipotent_matches_characteristic_polynomial(steps):
    # products of upper triangular elementary matrices are unipotent
    M = Matrix.identity(4)
    for i, j, t in steps:
        if i < j:
            M = M * Matrix.elementary(4, i, j, t)
    x = sympy.Symbol("x")
    charpoly = sympy.Matrix(M.rows).charpoly(x).as_expr()
    assert is_unipotent(M) == (sympy.expand(charpoly - (x - 1) ** 4) == 0)
    assert is_unipotent(M)


def test_rank_one_defect_examples():
    assert rank_one_defect(E(3, 1, 3))
    assert not rank_one_defect(Matrix.identity(3))
    M = E(3, 1, 2) * E(3, 1, 3)
    assert (M - Matrix.identity(3)).rows == ((0, 1, 1), (0, 0, 0), (0, 0, 0))
    assert rank_one_defect(M)
    assert not rank_one_defect(E(3, 1, 2) * E(3, 2, 3))


def test_exterior_power_examples():
    A = Matrix([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    assert exterior_power(Matrix.identity(3), 2) == Matrix.identity(3)
    assert exterior_power(A, 1) == A
    expected = Matrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    assert exterior_power(E(3, 1, 2), 2) == expected
    with pytest.raises(DomainError):
        exterior_power(A, 4)


def _rand_matrix(rng, n):
    return Matrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("seed", range(10))
def test_exterior_power_is_multiplicative(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    A, B = _rand_matrix(rng, n), _rand_matrix(rng, n)
    for r in range(n + 1):
        assert exterior_power(A * B, r) == exterior_power(A, r) * exterior_power(B, r)
    assert exterior_power(A, n) == Matrix([[A.det()]])


def test_matrix_order_examples():
    assert matrix_order(-Matrix.identity(2), 10) == 2
    assert matrix_order(Matrix.identity(3), 10) == 1
    assert matrix_order(Matrix.diagonal([1, -1, -1]), 10) == 2
    assert matrix_order(E(2, 1, 2), 50) is None
    with pytest.raises(DomainError):
        matrix_order(Matrix.zeros(2), 5)


def test_inverse_and_det():
    M = Matrix([[2, 1], [7, 4]])
    assert M.inverse() == Matrix([[4, -1], [-7, 2]])
    N = Matrix([[1, 2], [3, 4]])
    assert N * N.inverse() == Matrix.identity(2)
    assert N.inverse()[1, 0] == Fraction(3, 2)
    with pytest.raises(DomainError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_text_roundtrip():
    M = Matrix.from_text("1,0,0;0,1/2,sqrt(-7);0,0,1")
    assert Matrix.from_text(M.to_text()) == M
    assert M.domain == "Q(sqrt(-7))"
    assert Matrix.from_text("1,2;3,4").domain == "Z"


def test_mod_n_solver():
    # 2x = 0 over Z/4 has solutions {0, 2}; y is free
    sols = solve_homogeneous_mod(Matrix([[2, 0]]), 4)
    assert sorted(order for _, order in sols) == [2, 4]
    assert solve_homogeneous_mod(Matrix([[1]]), 6) == []
