import random
from fractions import Fraction

import pytest

from padicdesk.glrep import (GLBlockModel, WeightData, cone_decompose,
                             cone_reconstruct, generator_weights, is_dominant,
                             pieri_character_check, pieri_decompose,
                             weyl_dimension)
from padicdesk.matrices import ExactMatrix, rational_inverse
from padicdesk.polynomials import Poly


def test_weyl_dimensions():
    assert weyl_dimension((0, 0)) == 1
    assert weyl_dimension((1, 0)) == 2
    assert weyl_dimension((1, -2, -2)) == 10
    assert weyl_dimension((1, 1, 0, 0)) == 6


def test_block_model_trivial_and_standard():
    m0 = GLBlockModel(3, (0, 0, 0))
    assert m0.dimension == 1 and m0.basis[0] == Poly.constant(1)
    m1 = GLBlockModel(2, (1, 0))
    assert m1.dimension == 2
    g = ExactMatrix([[Fraction(2), Fraction(3)], [Fraction(5), Fraction(7)]])
    # lowest-weight vector evaluates to g_11/det
    assert m1.evaluate(m1.basis[0], g) == Fraction(2) / g.det()


def test_block_model_dimension_certification():
    for weight in [(1, -2, -2), (2, 0, -1), (1, 1, 0, 0)]:
        model = GLBlockModel(len(weight), weight)
        assert model.dimension == weyl_dimension(weight) == len(model.basis)


def test_block_model_dimension_cap():
    with pytest.raises(ValueError, match="cap"):
        GLBlockModel(4, (6, 2, -2, -6), dim_cap=50)


def test_block_model_rejects_non_dominant():
    with pytest.raises(ValueError, match="dominant"):
        GLBlockModel(2, (0, 1))


def test_group_action_matches_translation():
    rnd = random.Random(0)
    model = GLBlockModel(3, (1, -2, -2))
    h = ExactMatrix([[Fraction(1), Fraction(2), Fraction(0)],
                     [Fraction(0), Fraction(1), Fraction(3)],
                     [Fraction(1), Fraction(0), Fraction(1)]])
    for f in model.basis[:4]:
        g = ExactMatrix([[Fraction(rnd.randrange(1, 5)) for _ in range(3)] for _ in range(3)])
        lhs = model.evaluate(model.group_action(h, f), g, with_twist=False)
        rhs = model.evaluate(f, rational_inverse(h) * g, with_twist=False)
        assert lhs == rhs


def test_lie_action_weights():
    model = GLBlockModel(3, (1, -2, -2))
    for idx in range(model.dimension):
        f = model.basis[idx]
        w = model.weights[idx]
        for (a, b) in [(0, 1), (1, 2), (0, 2)]:
            g = model.lie_action(a, b, f)
            if g.is_zero():
                continue
            coords = model.expand(g)
            target = tuple(w[i] + (1 if i == a else 0) - (1 if i == b else 0)
                           for i in range(3))
            for i, c in enumerate(coords):
                if c:
                    assert model.weights[i] == target


def test_weight_data_cone():
    wd = WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])
    assert wd.in_cone() and wd.w == -1
    bad = WeightData(2, 1, 0, [[3, 2, 0, -3]], [0])
    assert "kappa_(n+1" in bad.cone_violation()
    bad2 = WeightData(2, 1, 0, [[3, 2, -2, -3]], [2])
    assert "j_tau0" in bad2.cone_violation()
    bad3 = WeightData(2, 2, 0, [[3, 2, -2, -3], [1, 0, 0, 0]], [0, 0])
    assert "component 1" in bad3.cone_violation()


def test_cone_decompose_spec_instance():
    wd = WeightData(2, 1, 0, [[3, 2, -2, -3]], [1])
    co = cone_decompose(wd)
    assert co["mu0"] == 0
    assert co["muw"] == 1
    assert co[("mu", 1, 0)] == 3
    assert co[("mu", 2, 0)] == 0
    assert co[("mu", 3, 0)] == 1
    assert co[("b", 0)] == 1
    back = cone_reconstruct(2, 1, co)
    assert (back.kappa0, back.kappa, back.j) == (wd.kappa0, wd.kappa, wd.j)


def test_cone_decompose_zero_weight():
    wd = WeightData(2, 1, 0, [[0, 0, 0, 0]], [0])
    assert all(v == 0 for v in cone_decompose(wd).values())


def test_cone_decompose_off_cone_error():
    wd = WeightData(2, 1, 0, [[3, 2, 0, -3]], [0])
    with pytest.raises(ValueError, match="not in the weight cone"):
        cone_decompose(wd)


def test_cone_roundtrip_random():
    from padicdesk.suites import _random_cone_weight

    rnd = random.Random(17)
    for _ in range(500):
        n = rnd.choice((2, 3))
        d = rnd.choice((1, 2))
        wd = _random_cone_weight(n, d, rnd)
        back = cone_reconstruct(n, d, cone_decompose(wd))
        assert (back.kappa0, back.kappa, back.j) == (wd.kappa0, wd.kappa, wd.j)


def test_generator_weights_in_cone():
    for (n, d) in [(2, 1), (2, 2), (3, 1)]:
        for key, wd in generator_weights(n, d).items():
            assert wd.in_cone(), (key, wd.cone_violation())


def test_pieri_examples():
    assert pieri_decompose((2, 0), 0) == [(2, 0)]
    assert set(pieri_decompose((2, 0), 1)) == {(1, 0), (2, -1)}
    assert set(pieri_decompose((1, 1, 0), 1)) == {(1, 0, 0), (1, 1, -1)}
    for kp in pieri_decompose((3, 1, 0, -1), 2):
        assert is_dominant(kp)
    with pytest.raises(ValueError):
        pieri_decompose((0, 1), 1)


def test_pieri_character_identity():
    for (kappa, j) in [((2, 0), 1), ((2, 1, 0), 2), ((1, 1, 0), 1),
                       ((3, 1, 0, -1), 2), ((2, 2, 1, 0), 3)]:
        assert pieri_character_check(kappa, j)


def test_weight_data_serialization():
    wd = WeightData(2, 2, 1, [[3, 2, -2, -3], [1, 1, -1, -1]], [1, 0])
    data = wd.to_json()
    back = WeightData.from_json(data)
    assert (back.n, back.d, back.kappa0, back.kappa, back.j) == \
        (wd.n, wd.d, wd.kappa0, wd.kappa, wd.j)
