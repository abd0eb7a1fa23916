from types import SimpleNamespace

import numpy as np
import pytest
import sympy
from mpmath import mp

from splitthue.errors import ZeroDiscriminant
from splitthue.eta_system import (
    build_for,
    classify_entry,
    det_Bk,
    determinant,
    discriminant,
    eig_lower_bound_check,
    gershgorin_disks,
    in_disk_union,
    regulator,
    regulator_estimates,
)
from splitthue.family import instantiate


def test_row_products(t1):
    _, _, s = build_for(t1, 6, 256)
    assert s.max_row_sum() <= 4 * mp.mpf(2) ** (-256 + 10)
    assert s.sign_pattern_ok


def test_classification():
    assert classify_entry(2, 2, 4) == "diagonal"
    assert classify_entry(3, 4, 4) == "top_pair"
    assert classify_entry(1, 3, 4) == "generic"


def test_determinant_hand():
    assert determinant([[-5, 3], [2, -4]]) == 14
    assert abs(determinant([[2, 1, 0], [1, 3, 1], [0, 1, 4]]) - 18) < 1e-60


def test_det_signs_and_growth(t1):
    _, _, s = build_for(t1, 6, 256)
    vals = [float(det_Bk(s, k)) for k in (1, 2, 3)]
    assert vals[0] == pytest.approx(-25.8, rel=2e-2)
    assert vals[1] == pytest.approx(621.6, rel=2e-3)
    assert vals[2] == pytest.approx(-8563, rel=2e-3)


def test_regulator_row_independent(t1):
    _, _, s = build_for(t1, 9, 256)
    vals = [regulator(s, r) for r in range(1, 5)]
    assert max(vals) - min(vals) < mp.mpf(2) ** -120 * max(vals)


@pytest.mark.parametrize("n", [2, 5, 9])
def test_discriminant_oracle(t1, n):
    form = instantiate(t1, n)
    x = sympy.Symbol("x")
    expr = sum(c * x**k for k, c in enumerate(form.coefficients))
    assert discriminant(form) == sympy.discriminant(expr, x)


def test_zero_discriminant():
    with pytest.raises(ZeroDiscriminant):
        discriminant(SimpleNamespace(n=0, poly_x=[1, -2, 1]))


def test_regulator_estimates(t1):
    form, _, s = build_for(t1, 8, 256)
    est = regulator_estimates(s, form, 0.01)
    assert est.index_upper == pytest.approx(est.R_G / (0.01 * est.log_disc))


def test_eig_lower_bound(t1):
    _, _, s = build_for(t1, 10, 256)
    for k in (1, 2, 3):
        assert eig_lower_bound_check(s, k).ok


def test_gershgorin_random_matrices():
    rng = np.random.default_rng(0)
    for _ in range(100):
        k = int(rng.integers(2, 7))
        A = rng.normal(size=(k, k)) * rng.uniform(0.1, 10)
        disks = gershgorin_disks(A.tolist())
        for z in np.linalg.eigvals(A):
            assert in_disk_union(complex(z), disks)


def test_gershgorin_exact_oracle():
    rng = np.random.default_rng(1)
    for _ in range(10):
        A = rng.integers(-9, 10, size=(4, 4))
        disks = gershgorin_disks(A.tolist())
        cp = sympy.Matrix(A.tolist()).charpoly().all_coeffs()
        for z in mp.polyroots([int(c) for c in cp], maxsteps=200, extraprec=200):
            assert in_disk_union(complex(z), disks)
