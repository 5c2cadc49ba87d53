import numpy as np
import pytest

from cubefree.core.errors import SingularMatrixError, UnsupportedPrimeError
from cubefree.core.modp import (FpMatrix, GLProductElement, discrete_log, gl_elements, matrix_order,
                                nullspace_mod_p, singer_cycle, solve_linear_system)


def test_matrix_arithmetic_mod_p():
    a = FpMatrix(5, ((1, 2), (3, 4)))
    assert a.det() == 3
    assert (a * a.inverse()).is_identity()
    assert a.act((1, 0)) == (1, 2)
    assert (a * a).act((1, 0)) == a.act(a.act((1, 0)))


def test_matrix_order():
    assert matrix_order(FpMatrix(7, ((0, 1), (6, 0)))) == 4
    assert matrix_order(FpMatrix.scalar(5, 4)) == 2
    assert matrix_order(FpMatrix(3, ((1, 1), (0, 1)))) == 3
    with pytest.raises(SingularMatrixError):
        matrix_order(FpMatrix(5, ((1, 2), (2, 4))))


def test_general_linear_group_sizes():
    assert sum(1 for _ in gl_elements(2)) == 6
    assert sum(1 for _ in gl_elements(3)) == 48
    assert sum(1 for _ in gl_elements(5, 1)) == 4


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_singer_cycle_has_full_order(p):
    cycle = singer_cycle(p)
    assert matrix_order(cycle.s) == p * p - 1
    assert matrix_order(cycle.subgroup_generator(p + 1)) == p + 1


def test_singer_cycle_needs_odd_prime():
    with pytest.raises(UnsupportedPrimeError):
        singer_cycle(2)


def test_gl_product_elements_multiply_componentwise():
    sig = ((3, 2), (5, 1))
    x = GLProductElement((FpMatrix(3, ((0, 1), (2, 0))), FpMatrix(5, ((2,),))))
    assert x.signature == sig
    assert (x ** 4).is_identity()
    assert (x * x.inverse()) == GLProductElement.identity(sig)


def test_solve_linear_system_prime_modulus():
    a = [[1, 2], [3, 4]]
    x = solve_linear_system(a, [5, 6], 7)
    assert np.array_equal((np.array(a) @ x) % 7, np.array([5, 6]))
    assert solve_linear_system([[1, 1], [1, 1]], [0, 1], 5) is None


def test_solve_linear_system_squarefree_composite():
    a = [[2, 3], [1, 5]]
    b = [4, 9]
    x = solve_linear_system(a, b, 30)
    assert np.array_equal((np.array(a) @ x) % 30, np.array(b) % 30)


def test_solve_linear_system_prime_square():
    a = [[3, 0], [0, 1]]
    b = [6, 4]
    x = solve_linear_system(a, b, 9)
    assert np.array_equal((np.array(a) @ x) % 9, np.array(b))
    assert solve_linear_system([[3]], [1], 9) is None


def test_nullspace_mod_p():
    a = np.array([[1, 2, 3], [2, 4, 6]])
    basis = nullspace_mod_p(a, 7)
    assert len(basis) == 2
    for v in basis:
        assert not np.any((a @ v) % 7)


def test_discrete_log():
    assert discrete_log(3, 13, 17) == 4
    assert discrete_log(2, 1, 7) == 0
    assert discrete_log(2, 3, 7) is None


def test_small_field_examples():
    assert matrix_order(FpMatrix.diagonal(5, 2, 1)) == 4
    assert matrix_order(FpMatrix.identity(11)) == 1
    assert list(solve_linear_system([[2]], [1], 5)) == [3]
    assert discrete_log(2, 3, 5) == 3
    assert discrete_log(4, 2, 5) is None


def test_discrete_log_respects_the_bound():
    assert discrete_log(3, 13, 17, bound=2) is None
