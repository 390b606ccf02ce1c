from hypothesis import given, strategies as st
from sympy import Matrix

from localtoric.lattice import (
    hermite_basis,
    integer_kernel,
    lattice_index,
    lattice_rank,
    smith_normal_form,
    solve_mod,
    solve_rational,
)

small = st.integers(-6, 6)
matrices = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_smith_normal_form(a):
    U, D, V = smith_normal_form(a)
    assert Matrix(U) * Matrix(a) * Matrix(V) == Matrix(D)
    assert abs(Matrix(U).det()) == 1 and abs(Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for x, y in zip(diag, diag[1:]):
        assert x >= 0 and (y == 0 or (x and y % x == 0))


@given(matrices)
def test_integer_kernel(a):
    ker = integer_kernel(a)
    assert len(ker) == len(a[0]) - Matrix(a).rank()
    for v in ker:
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in a)


def test_hermite_and_index():
    assert lattice_index([(2, 0), (0, 1)], 2) == 2
    assert lattice_index([(3, 0), (1, 1), (0, 3)], 2) == 3
    assert lattice_index([(1, 1)], 2) is None
    assert hermite_basis([(2, 0), (4, 0), (0, 3)]) == hermite_basis([(2, 0), (0, 3)])
    assert lattice_rank([(1, 2), (2, 4)]) == 1


def test_solve_mod():
    x = solve_mod([[2, 0], [0, 3]], [4, 6], 10)
    assert (2 * x[0]) % 10 == 4 and (3 * x[1]) % 10 == 6
    assert solve_mod([[2]], [1], 4) is None


def test_solve_rational():
    assert solve_rational([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None
