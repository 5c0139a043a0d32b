import random
from collections import Counter

import pytest
from hypothesis import given

from klh.bruhat import poincare, quotient_poincare
from klh.groups import (
    CoxeterContext, SignedPermutation, diagram_automorphism, enumerate_group,
    identity, longest_element, parabolic_decompose, parse_one_line,
)
from klh.heights import (
    BoundReport, HValue, Method, NotTopHeavy, exceptional_type_d,
    extremal_type_a, h_bjorner_ekedahl, h_formula_type_a,
    h_upper_bound_type_d, is_top_heavy, min_of_h_check, polynomial_h,
    top_heavy_h, verify_bound,
)
from klh.kl import INFINITY, h_via_kl
from klh.patterns import PatternId, contains, h_equals_one_detect, magnitude
from klh.polynomial import IntPolynomial

from strategies import random_top_heavy, top_heavy_polys

A3, A4, A5 = (CoxeterContext("A", r) for r in (3, 4, 5))
D4, D5 = CoxeterContext("D", 4), CoxeterContext("D", 5)


def P(s, ctx=A3):
    return parse_one_line(ctx, s)


def S(*window):
    return SignedPermutation(window)


def poly(*c):
    return IntPolynomial(c)


class TestExamples:
    def test_top_heavy_h(self):
        assert top_heavy_h(poly(1, 2, 1)) == INFINITY
        assert top_heavy_h(poly(1, 3, 5, 4, 1)) == 1
        assert top_heavy_h(poly(1, 2)) == 0

    def test_top_heavy_h_rejects(self):
        with pytest.raises(NotTopHeavy) as err:
            top_heavy_h(poly(1, 4, 5, 3, 1))
        assert err.value.index == 1
        with pytest.raises(ValueError):
            top_heavy_h(poly(1, -1, 2))

    def test_bjorner_ekedahl(self):
        assert h_bjorner_ekedahl(identity(A3)) == INFINITY
        assert h_bjorner_ekedahl(P("3412")) == 1
        assert h_bjorner_ekedahl(P("564312", A5)) == 3

    def test_formula(self):
        assert h_formula_type_a(P("4231")) == 1
        assert h_formula_type_a(P("45312", A4)) == 2
        assert h_formula_type_a(P("564312", A5)) == 3
        assert h_formula_type_a(P("1234")) == INFINITY
        with pytest.raises(TypeError):
            h_formula_type_a(S(1, 2, 3, 4))

    def test_type_d_bound(self):
        assert h_upper_bound_type_d(S(-1, 2, -3, 4)) == 1
        w = S(4, 2, 3, 1, 5)
        assert contains(w, PatternId.P4231) and not h_equals_one_detect(w)
        assert h_upper_bound_type_d(w) == 2
        assert h_upper_bound_type_d(S(1, -3, -2, 4)) == 1
        assert magnitude(S(1, -3, -2, 4)) == 2
        assert h_upper_bound_type_d(S(1, 2, 3, 4)) == INFINITY
        with pytest.raises(ValueError):
            h_upper_bound_type_d(S(1, 2, 3))

    def test_magnitude_bound(self):
        w = S(2, -4, -3, 1, 5)
        assert not contains(w, PatternId.P4231) and magnitude(w) == 3
        assert h_upper_bound_type_d(w) == 2

    def test_verify_bound(self):
        for w in enumerate_group(A3):
            rep = verify_bound(w)
            assert rep.holds
            if rep.singular:
                assert rep.h == 1 and rep.bound == 1
        rep = verify_bound(S(5, 2, -3, -4, 1))
        assert (rep.h, rep.bound, rep.holds) == (2, 3, True)
        assert rep.method == Method.BJORNER_EKEDAHL
        smooth = verify_bound(identity(A3))
        assert not smooth.singular and smooth.holds

    def test_min_of_h(self):
        assert min_of_h_check(poly(1, 1, 1), poly(1, 2))
        assert poly(1, 1, 1) * poly(1, 2) == poly(1, 3, 3, 2)
        assert polynomial_h(poly(1, 3, 3, 2)) == 0
        assert min_of_h_check(poly(1, 1), poly(1, 1))
        assert top_heavy_h(poly(1, 1) * poly(1, 1)) == INFINITY
        w = P("564312", A5)
        J = {2, 3, 4}
        upper, _ = parabolic_decompose(w, J)
        f1 = quotient_poincare(upper, J)
        f2 = poincare(longest_element(A5, J))
        assert min_of_h_check(f1, f2)
        assert top_heavy_h(f1) == 3 and top_heavy_h(f2) == INFINITY
        assert polynomial_h(f1 * f2) == 3

    def test_min_of_h_rejects_non_top_heavy(self):
        with pytest.raises(ValueError):
            min_of_h_check(poly(2, 1), poly(1))

    def test_product_need_not_be_top_heavy(self):
        f = poly(1, 2) * poly(1, 0, 1)
        assert not is_top_heavy(f)
        assert polynomial_h(f) == 0


def test_hvalue():
    assert HValue(INFINITY, Method.KL).smooth
    assert not HValue(2, Method.KL).smooth
    with pytest.raises(ValueError):
        HValue(0, Method.KL)


def test_special_elements():
    assert tuple(extremal_type_a(6).images) == (5, 6, 4, 3, 1, 2)
    assert tuple(extremal_type_a(4).images) == (3, 4, 1, 2)
    assert tuple(exceptional_type_d(5).window) == (5, 2, -3, -4, 1)
    assert tuple(exceptional_type_d(4).window) == (4, 2, -3, -1)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_extremal_element(n):
    w = extremal_type_a(n)
    assert h_bjorner_ekedahl(w) == h_formula_type_a(w) == n - 3


@pytest.mark.parametrize("ctx", [A3, A4, A5, D4], ids=str)
def test_three_way_agreement(ctx):
    for w in enumerate_group(ctx):
        h = h_via_kl(w)
        assert h == h_bjorner_ekedahl(w)
        if ctx.type == "A":
            assert h == h_formula_type_a(w)
        else:
            assert h <= h_upper_bound_type_d(w)


# frozen distributions of h over whole groups; keys are str(h)
H_DISTRIBUTION = {
    "A3": {"1": 2, "inf": 22},
    "A4": {"1": 31, "2": 1, "inf": 88},
    "A5": {"1": 341, "2": 12, "3": 1, "inf": 366},
    "D4": {"1": 81, "2": 3, "inf": 108},
}


@pytest.mark.parametrize("name", sorted(H_DISTRIBUTION))
def test_h_distribution(name):
    ctx = CoxeterContext(name[0], int(name[1:]))
    got = Counter(str(h_via_kl(w)) for w in enumerate_group(ctx))
    assert dict(got) == H_DISTRIBUTION[name]


def test_type_d_bounds_d4():
    for w in enumerate_group(D4):
        h = h_via_kl(w)
        assert h <= h_upper_bound_type_d(w)
        if contains(w, PatternId.P4231):
            assert h <= 2
        mg = magnitude(w)
        if mg is not None and not contains(w, PatternId.P4231):
            assert h <= mg - 1
        if h_equals_one_detect(w):
            assert h == 1


def test_inverse_and_automorphism_symmetry():
    for ctx in (A4, D4):
        for w in enumerate_group(ctx):
            h = h_bjorner_ekedahl(w)
            assert h == h_bjorner_ekedahl(w.inverse())
            assert h == h_bjorner_ekedahl(diagram_automorphism(w))


def test_min_of_h_random_pairs():
    rng = random.Random(7)
    for _ in range(1000):
        f1, f2 = random_top_heavy(rng), random_top_heavy(rng)
        assert min_of_h_check(f1, f2)


@given(top_heavy_polys(), top_heavy_polys())
def test_min_of_h_property(f1, f2):
    assert polynomial_h(f1 * f2) == min(top_heavy_h(f1), top_heavy_h(f2))


@given(top_heavy_polys())
def test_polynomial_h_agrees_on_top_heavy(f):
    assert is_top_heavy(f)
    assert polynomial_h(f) == top_heavy_h(f)


def test_bound_report_fields():
    rep = BoundReport(identity(A3), 3, INFINITY, Method.KL, False)
    assert rep.holds and rep.bound == 1
