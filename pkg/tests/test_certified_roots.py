from fractions import Fraction

import pytest

from splitthue import poly
from splitthue.certified_roots import (
    correction_denominators,
    isolate_roots,
    lemma1_residual,
    residual_threshold,
    root_gap_check,
    verify_certificate,
)
from splitthue.family import instantiate


def test_t1_n2_first_root(t1):
    form = instantiate(t1, 2)
    roots = isolate_roots(form, 128)
    assert len(roots) == 4
    P = correction_denominators(form.g_values)
    assert P[0] == (4 - 9) * (4 - 26) * (4 - 29)
    assert abs(roots[0].midpoint - (4 + Fraction(1, P[0]))) < Fraction(1, 10**6)
    for r in roots:
        assert r.width <= Fraction(1, 2**128)
        assert verify_certificate(form, r)


@pytest.mark.parametrize("n", [1, 4, 9])
def test_roots_agree_with_full_isolation(t1, n):
    form = instantiate(t1, n)
    roots = isolate_roots(form, 60)
    ref = poly.isolate_real_roots(form.poly_x, 60)
    for r, (lo, hi) in zip(roots, ref):
        assert r.lo <= hi and lo <= r.hi


def test_residuals_small(t1):
    rs = lemma1_residual(t1, 8, 256)
    assert all(r.residual < 1 for r in rs)
    assert residual_threshold(t1, range(3, 9)) is not None


def test_root_gaps(t1):
    form = instantiate(t1, 10)
    gaps = root_gap_check(isolate_roots(form, 80), t1, 10)
    top = [g for g in gaps if (g.i, g.j) == (3, 4)][0]
    assert top.base == 2
    assert 0.5 < float(top.normalized) < 2
