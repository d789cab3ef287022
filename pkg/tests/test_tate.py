import random
from fractions import Fraction

import pytest

from padicdesk import tate
from padicdesk.artinian import ArtinianElement, derivation_from_images
from padicdesk.matrices import ExactMatrix
from padicdesk.rationals import INF


def one_gen_setup(lam=Fraction(1)):
    base = derivation_from_images([ArtinianElement.constant(1, 1)])  # D(eps) = 1
    return tate.ShiftDerivation(base, lam)


def test_pattern_poly_examples():
    assert tate.pattern_poly_eval(tate.SubsetPattern(4, []), 9) == 1
    # full interval is the binomial polynomial
    assert tate.pattern_poly_eval(tate.SubsetPattern(3, [0, 1, 2]), 5) == 10
    # two singleton blocks
    assert tate.pattern_poly_eval(tate.SubsetPattern(3, [0, 2]), 5) == 15
    # integrality on integers
    for k in range(1, 6):
        for subset_mask in range(1 << k):
            subset = [i for i in range(k) if subset_mask >> i & 1]
            pat = tate.SubsetPattern(k, subset)
            for x in range(-4, 8):
                v = tate.pattern_poly_eval(pat, x)
                assert v.denominator == 1


def test_subset_pattern_blocks():
    pat = tate.SubsetPattern(7, [0, 1, 3, 5, 6])
    assert sorted(pat.blocks) == [1, 2, 2]
    assert sum(pat.blocks) == 5
    with pytest.raises(ValueError):
        tate.SubsetPattern(3, [5])


def test_closed_form_degree_zero_and_one():
    der = one_gen_setup()
    eps = ArtinianElement.gen(1, 0)
    dmax = 12
    out = tate.binomial_of_derivation_closed(0, eps, 2, 1, der, dmax)
    assert out == tate.TateSeries.monomial(1, dmax, eps, 2, 1)
    out = tate.binomial_of_derivation_closed(1, eps, 1, 0, der, dmax)
    one = ArtinianElement.constant(1, 1)
    want = (tate.TateSeries.monomial(1, dmax, one, 1, 0)
            + tate.TateSeries.monomial(1, dmax, eps, 0, 1))
    assert out == want


def test_closed_form_spec_instance():
    # f_2 applied to eps*X: -X/2 + lam Y - (lam/2) eps Y, frozen by iteration
    lam = Fraction(1)
    der = one_gen_setup(lam)
    eps = ArtinianElement.gen(1, 0)
    dmax = 12
    closed = tate.binomial_of_derivation_closed(2, eps, 1, 0, der, dmax)
    direct = tate.binomial_of_derivation_direct(
        2, tate.TateSeries.monomial(1, dmax, eps, 1, 0), der)
    want = (tate.TateSeries.monomial(1, dmax, ArtinianElement.constant(1, Fraction(-1, 2)), 1, 0)
            + tate.TateSeries.monomial(1, dmax, ArtinianElement.constant(1, lam), 0, 1)
            + tate.TateSeries.monomial(1, dmax, eps * (-lam / 2), 0, 1))
    assert closed == direct == want


def test_closed_equals_direct_zero_base_derivation():
    # k > a with D = 0: lambda-terms truncate at r = a
    base = derivation_from_images([ArtinianElement(1, {})])
    der = tate.ShiftDerivation(base, Fraction(2))
    s = ArtinianElement.constant(1, 1) + ArtinianElement.gen(1, 0)
    dmax = 12
    for k in range(5):
        closed = tate.binomial_of_derivation_closed(k, s, 2, 1, der, dmax)
        direct = tate.binomial_of_derivation_direct(
            k, tate.TateSeries.monomial(1, dmax, s, 2, 1), der)
        assert closed == direct
        for (a, b) in closed.terms:
            assert a >= 0


def test_closed_equals_direct_two_generators():
    rnd = random.Random(4)
    ngens = 2
    images = [ArtinianElement.constant(ngens, 2), ArtinianElement.gen(ngens, 0)]
    der = tate.ShiftDerivation(derivation_from_images(images), Fraction(3))
    dmax = 10
    for k in range(5):
        for a in range(4):
            for b in range(3):
                if a + b + k > dmax:
                    continue
                s = ArtinianElement.constant(ngens, rnd.randrange(-2, 3))
                s = s + ArtinianElement.gen(ngens, 0) * rnd.randrange(-2, 3)
                s = s + ArtinianElement.gen(ngens, 1) * rnd.randrange(-2, 3)
                closed = tate.binomial_of_derivation_closed(k, s, a, b, der, dmax)
                direct = tate.binomial_of_derivation_direct(
                    k, tate.TateSeries.monomial(ngens, dmax, s, a, b), der)
                assert closed == direct


def test_degree_overflow_error():
    der = one_gen_setup()
    with pytest.raises(ValueError, match="truncation"):
        tate.binomial_of_derivation_closed(10, ArtinianElement.gen(1, 0), 2, 2, der, 12)
    with pytest.raises(ValueError, match="exceeds"):
        tate.TateSeries.monomial(1, 3, ArtinianElement.constant(1, 1), 2, 2)


def test_operator_recursion_identity():
    der = one_gen_setup(Fraction(3))
    dmax = 14
    s = ArtinianElement.constant(1, 1) + ArtinianElement.gen(1, 0) * 2
    f = (tate.TateSeries.monomial(1, dmax, s, 2, 1)
         + tate.TateSeries.monomial(1, dmax, ArtinianElement.gen(1, 0), 0, 3))
    for k in range(8):
        assert tate.binomial_operator_recursion_check(k, f, der)


def test_leibniz_rule_on_truncated_products():
    # base derivation T -> 2T is a genuine derivation of the quotient ring
    base = derivation_from_images([ArtinianElement.gen(1, 0) * 2])
    der = tate.ShiftDerivation(base, Fraction(2))
    dmax = 8
    eps = ArtinianElement.gen(1, 0)
    f = tate.TateSeries.monomial(1, dmax, eps + 1, 1, 0)
    g = tate.TateSeries.monomial(1, dmax, eps * 2 + 3, 2, 1)
    assert der(f * g) == der(f) * g + f * der(g)
    # pure shift part (zero base derivation) obeys Leibniz on any product
    der0 = tate.ShiftDerivation(derivation_from_images([ArtinianElement(1, {})]),
                                Fraction(3))
    assert der0(f * g) == der0(f) * g + f * der0(g)


def test_epsilon_action_bound_examples():
    p = 3
    # zero operator: binomials vanish for k >= 1
    rep = tate.epsilon_action_bound(ExactMatrix([[Fraction(0)]]), Fraction(1, 2), 6, p)
    assert rep["exponents"][0] == 0
    assert all(e == -INF for e in rep["exponents"][1:])
    assert rep["passed"]
    # multiplication by integer m: vanishing beyond k = m
    rep = tate.epsilon_action_bound(ExactMatrix([[Fraction(3)]]), Fraction(1, 2), 8, p)
    assert all(e == -INF for e in rep["exponents"][4:])
    # perturbation instance
    T = tate.shift_matrix(4, p) + tate.cyclic_shift_matrix(4, p ** 3)
    rep = tate.epsilon_action_bound(T, Fraction(1, 2), 12, p)
    assert rep["passed"]
    assert rep["eventually_below_target_from"] is not None


def test_perturbation_threshold_empirical():
    # the shifted operator needs a minimum congruence depth before decay
    p = 3
    thresholds = {}
    for npow in range(0, 5):
        T = tate.shift_matrix(4, p) + tate.cyclic_shift_matrix(4, p ** npow)
        rep = tate.epsilon_action_bound(T, Fraction(1, 2), 16, p)
        thresholds[npow] = rep["passed"]
    assert thresholds[4] and thresholds[3]


def test_overconvergence_chain():
    chain = tate.OverconvergenceChain(3, 1, 20)
    assert chain.annihilator_exponent() == 9
    assert chain.stage_for_delta(Fraction(1, 2)) == 2
    # trivially-scaled element
    res = chain.verify_implication({0: Fraction(27)}, Fraction(1, 2))
    assert res["passed"]
    # the (p h^-M)^m w shape
    v = {-18: Fraction(9), -9: Fraction(3), 0: Fraction(1)}
    res = chain.verify_implication(v, Fraction(1, 2))
    assert res["passed"]
    rnd = random.Random(8)
    for _ in range(200):
        v = {}
        for _ in range(rnd.randrange(1, 6)):
            i = rnd.randrange(-20, 21)
            v[i] = Fraction(rnd.randrange(-80, 81), 3 ** rnd.randrange(0, 3))
        assert chain.verify_implication(v, Fraction(1, 2))["passed"]


def test_overconvergence_chain_depth_error():
    chain = tate.OverconvergenceChain(3, 1, 5)
    with pytest.raises(ValueError, match="need depth >= 9"):
        chain.annihilator_exponent()


def test_tate_norm_exponent():
    s = ArtinianElement.constant(1, Fraction(1, 3))
    f = tate.TateSeries.monomial(1, 6, s, 1, 1)
    assert f.norm_exponent(3) == 1
    assert tate.TateSeries(1, 6, {}).norm_exponent(3) == -INF
