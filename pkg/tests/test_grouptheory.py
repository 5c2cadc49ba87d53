import pytest

from cubefree.core.errors import NotCubefreeError, NotSolvableError, PreconditionError
from cubefree.core.grouptheory import (OrderFactorization, center, centralizer, chief_series, conjugacy_classes,
                                       derived_series, derived_subgroup, factor_order, hall_system, intersection,
                                       is_cubefree, is_elementary_abelian, is_solvable, normal_closure,
                                       order_statistics, require_cubefree, sylow_subgroup)
from cubefree.core.perm import parse_permutation
from conftest import perm_group


def test_derived_series_of_s4(s4):
    orders = [g.order() for g in derived_series(s4)]
    assert orders == [24, 12, 4, 1]
    assert is_solvable(s4)


def test_a5_is_perfect(a5):
    assert derived_subgroup(a5).order() == 60
    assert not is_solvable(a5)


def test_normal_closure_of_a_transposition(s4):
    closure = normal_closure(s4, [parse_permutation("(1,2)", 4)])
    assert closure.order() == 24
    double = normal_closure(s4, [parse_permutation("(1,2)(3,4)", 4)])
    assert double.order() == 4


def test_centralizers(s4, dic3, c12):
    v4 = perm_group(["(1,2)(3,4)", "(1,3)(2,4)"], 4)
    assert centralizer(s4, v4).order() == 4
    assert center(s4).order() == 1
    assert center(dic3).order() == 2
    assert center(c12).order() == 12


def test_intersection(s4):
    first = perm_group(["(1,2,3,4)", "(1,3)"], 4)
    second = perm_group(["(1,2)(3,4)", "(1,3)(2,4)", "(1,2,3)"], 4)
    assert intersection(s4, first, second).order() == 4


def test_chief_series_factors(s4, a4, c12):
    series = chief_series(a4)
    assert series.factor_data == [(2, 2), (3, 1)]
    assert [t.order() for t in series.terms] == [1, 4, 12]
    assert sorted(chief_series(c12).factor_data) == [(2, 1), (2, 1), (3, 1)]
    assert [p ** f for p, f in chief_series(s4).factor_data] == [4, 3, 2]


def test_chief_series_needs_solvable(a5):
    with pytest.raises(NotSolvableError):
        chief_series(a5)


def test_sylow_subgroups(a5, dic3, a4):
    assert sylow_subgroup(a5, 2).order() == 4
    assert sylow_subgroup(a5, 5).order() == 5
    p2 = sylow_subgroup(dic3, 2)
    assert p2.order() == 4
    assert any(g.order() == 4 for g in p2.elements())
    assert is_elementary_abelian(sylow_subgroup(a4, 2), 2)
    with pytest.raises(PreconditionError):
        sylow_subgroup(a4, 5)


def test_sylow_subgroup_rejects_cubes(s4):
    with pytest.raises(NotCubefreeError):
        sylow_subgroup(s4, 2)


def test_order_factorization(a5, s4):
    fact = factor_order(a5)
    assert str(fact) == "60 = 2^2·3·5"
    assert fact.is_cubefree()
    assert is_cubefree(a5)
    assert not is_cubefree(s4)
    assert str(OrderFactorization.of(1)) == "1"
    assert OrderFactorization.of(44100).primes == [2, 3, 5, 7]


def test_require_cubefree():
    require_cubefree(44100)
    with pytest.raises(NotCubefreeError) as info:
        require_cubefree(360)
    assert info.value.prime == 2


def test_conjugacy_classes_of_a5(a5):
    sizes = sorted(size for _, size in conjugacy_classes(a5))
    assert sizes == [1, 12, 12, 15, 20]


def test_order_statistics_separate_order_12(c12, dic3):
    assert order_statistics(c12) != order_statistics(dic3)
    assert dict(order_statistics(dic3))[4] == 6


def test_hall_system_of_a4(a4):
    halls = hall_system(a4)
    assert sorted(h.order() for h in halls) == [3, 4]
