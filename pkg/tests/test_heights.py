import math

import mpmath
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from splitthue.analysis import height_product_bound, height_sum_bound, modified_height, weil_height


def test_examples():
    with mpmath.workprec(128):
        assert abs(weil_height(2) - mpmath.log(2)) < 1e-30
        assert weil_height(1) == 0
        assert abs(weil_height(Fraction(-3, 7)) - mpmath.log(7)) < 1e-30
        assert abs(weil_height([-2, 0, 1]) - mpmath.log(2) / 2) < 1e-30  # M(x^2 - 2) = 2


def test_integer_via_polynomial():
    with mpmath.workprec(128):
        assert abs(weil_height([-5, 1]) - mpmath.log(5)) < 1e-30


def test_conjugates_share_height():
    p = [1, -10, 0, 1]  # x^3 - 10x + 1, irreducible
    assert weil_height(p) == weil_height(p)


def test_algebraic_subadditivity():
    h2, h3 = weil_height([-2, 0, 1]), weil_height([-3, 0, 1])
    assert weil_height([-6, 0, 1]) <= height_product_bound(h2, h3) + 1e-9  # sqrt 6
    assert weil_height([1, 0, -10, 0, 1]) <= height_sum_bound(h2, h3) + 1e-9  # sqrt 2 + sqrt 3


fr = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(fr, fr)
def test_rational_subadditivity(a, b):
    ha, hb = weil_height(a), weil_height(b)
    assert weil_height(a * b) <= ha + hb + 1e-9
    assert weil_height(a + b) <= ha + hb + math.log(2) + 1e-9
    assert weil_height(a - b) <= ha + hb + math.log(2) + 1e-9


def test_modified_height():
    assert modified_height(0, 0, 4) == 0.25
    assert modified_height(8, 1, 4) == 2
    assert modified_height(1, -12, 3) == 4
