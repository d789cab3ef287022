import random
from fractions import Fraction

import pytest

from padicdesk.branch import (BranchModel, GeneratorFamily, MPoint,
                              algebraic_product_value, column_point,
                              twisted_product_value, u_conjugator, v_basepoint)
from padicdesk.characters import PCharacter
from padicdesk.glrep import WeightData
from padicdesk.mahler import weighted_indicator
from padicdesk.matrices import ExactMatrix
from padicdesk.rationals import valuation
from padicdesk.suites import (_random_congruence_unipotent, _random_subgroup_point,
                              _random_unit_box_point)


def test_trivial_weight():
    bm = BranchModel(WeightData(2, 1, 0, [[0, 0, 0, 0]], [0]))
    assert bm.dimension == 1 and bm.eigen_dimension == 1
    ident = MPoint.identity(2, 1)
    assert bm.pair_value(ident, ident) == 1


def test_multiplicity_one_spec_instances():
    # j = 0 instance
    bm = BranchModel(WeightData(2, 1, 0, [[2, 1, -2, -2]], [0]))
    assert bm.eigen_dimension == 1
    # j = 1 instance exercising the twist tensor step
    bm2 = BranchModel(WeightData(2, 1, 0, [[3, 2, -2, -3]], [1]))
    assert bm2.eigen_dimension == 1 and bm2.dimension == 70


def test_normalization_value_is_one():
    for wd in [WeightData(2, 1, 0, [[2, 1, -2, -2]], [0]),
               WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])]:
        bm = BranchModel(wd)
        u = u_conjugator(wd.n, wd.d)
        assert bm.pair_value(u, v_basepoint(wd.n, wd.d)) == 1


def test_off_cone_error():
    with pytest.raises(ValueError, match="cone"):
        BranchModel(WeightData(2, 1, 0, [[3, 2, 0, -3]], [0]))


def test_dimension_cap_error():
    with pytest.raises(ValueError, match="cap"):
        BranchModel(WeightData(2, 1, 0, [[6, 5, -5, -6]], [1]), dim_cap=100)


def test_group_eigen_property():
    rnd = random.Random(7)
    bm = BranchModel(WeightData(2, 1, 0, [[3, 2, -2, -3]], [1]))
    for _ in range(20):
        m = _random_subgroup_point(2, 1, rnd)
        assert bm.eigen_check(m)


def test_group_eigen_property_two_components():
    rnd = random.Random(3)
    wd = WeightData(2, 2, 0, [[0, 1, -1, -1], [1, 1, -1, -1]], [0, 1])
    bm = BranchModel(wd)
    for _ in range(5):
        assert bm.eigen_check(_random_subgroup_point(2, 2, rnd))


def test_unit_values_and_column_oracle():
    p, beta = 3, 1
    M = beta + 2
    rnd = random.Random(11)
    for wd in [WeightData(2, 1, 0, [[3, 2, -2, -3]], [1]),
               WeightData(3, 1, 0, [[0, 1, 1, 0, -1, -1]], [1])]:
        bm = BranchModel(wd)
        n = wd.n
        for _ in range(8):
            g = _random_congruence_unipotent(n, wd.d, p, beta, M, rnd)
            a = _random_unit_box_point(n, p, beta, M, rnd)
            val = bm.box_restriction_value(g, a)
            assert valuation(val - 1, p) >= beta
            assert val == bm.open_orbit_value(g, column_point(n, a))


def test_unit_values_beta_two():
    p, beta = 3, 2
    M = beta + 2
    rnd = random.Random(13)
    bm = BranchModel(WeightData(2, 1, 0, [[2, 1, -2, -2]], [0]))
    for _ in range(6):
        g = _random_congruence_unipotent(2, 1, p, beta, M, rnd)
        a = _random_unit_box_point(2, p, beta, M, rnd)
        val = bm.box_restriction_value(g, a)
        assert valuation(val - 1, p) >= beta


def test_general_unit_value_without_congruence():
    # arbitrary unit in the middle slot: the value is a p-unit (scaled by its power)
    p, beta = 3, 1
    M = beta + 2
    rnd = random.Random(5)
    wd = WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])
    bm = BranchModel(wd)
    for unit in (1, 2, 4, 5):
        g = _random_congruence_unipotent(2, 1, p, beta, M, rnd)
        a = [Fraction(rnd.randrange(0, p ** M)), Fraction(unit),
             Fraction(p * rnd.randrange(0, p ** (M - 1)))]
        val = bm.box_restriction_value(g, a)
        assert valuation(val, p) == 0
        # the unit part is the middle coordinate to the twist degree, mod p^beta
        assert valuation(val - Fraction(unit) ** wd.j[0], p) >= beta


def test_convention_point_value():
    wd = WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])
    bm = BranchModel(wd)
    a = [Fraction(0), Fraction(1), Fraction(0)]
    assert bm.box_restriction_value(MPoint.identity(2, 1), a) == 1


def test_restriction_vector_shape():
    wd = WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])
    bm = BranchModel(wd)
    g = MPoint.identity(2, 1)
    a = [Fraction(0), Fraction(1), Fraction(0)]
    vec = bm.box_restriction_vector(g, a)
    assert sum(v for _, v in vec) == bm.box_restriction_value(g, a)


def test_generator_product_reassembly_and_twist():
    p, beta = 3, 1
    M = beta + 2
    rnd = random.Random(23)
    fam = GeneratorFamily(2, 1)
    chi = PCharacter.from_log(p, 1, 1)
    wd = WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])
    bm = BranchModel(wd)
    for trial in range(10):
        g = _random_congruence_unipotent(2, 1, p, beta, M, rnd)
        a = _random_unit_box_point(2, p, beta, M, rnd)
        if trial % 3 == 2:
            a[1] = Fraction(p * rnd.randrange(0, p))  # leave the unit box
            assert twisted_product_value(fam, wd, [chi], g, a).is_zero()
            continue
        direct = bm.box_restriction_value(g, a)
        assert direct == algebraic_product_value(fam, wd, g, a)
        tw = twisted_product_value(fam, wd, [chi], g, a)
        assert tw == weighted_indicator(beta, chi, a) * direct


def test_branch_vector_serialization():
    bm = BranchModel(WeightData(2, 1, 0, [[2, 1, -2, -2]], [0]))
    data = bm.to_json()
    assert data["eigenspace_dimension"] == 1
    assert len(data["basis_labels"]) == bm.dimension
    # reproducible across a rebuild
    again = BranchModel(WeightData(2, 1, 0, [[2, 1, -2, -2]], [0])).to_json()
    assert data == again


def test_trivial_weight_restriction_constant_one():
    p, beta = 3, 1
    M = beta + 2
    rnd = random.Random(31)
    bm = BranchModel(WeightData(2, 1, 0, [[0, 0, 0, 0]], [0]))
    for _ in range(5):
        g = _random_congruence_unipotent(2, 1, p, beta, M, rnd)
        a = _random_unit_box_point(2, p, beta, M, rnd)
        assert bm.box_restriction_value(g, a) == 1
