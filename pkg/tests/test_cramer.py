import pytest
from mpmath import mp

from splitthue.analysis import (
    beta_vector,
    cramer_uv,
    log_beta_two_ways,
    lower_bound_log_y,
    near_solution,
    u_asymptotics,
)
from splitthue.eta_system import build_for
from splitthue.family import SolutionRecord, trivial_solutions


@pytest.fixture(scope="module")
def t1_n6(t1):
    return build_for(t1, 6, 256)


def test_trivial_types_and_b_over_I(t1_n6):
    form, roots, s = t1_n6
    d = form.d
    for i, g in enumerate(form.g_values, start=1):
        v = beta_vector(SolutionRecord(6, g, 1, -1), roots)
        assert v.type_j == i and v.product_ok and v.separation_ok and v.upper_ok
        rep = log_beta_two_ways(v, s)
        want = [1 if k == i else 0 for k in range(1, d)] if i < d else [-1] * (d - 1)
        assert all(abs(b - w) < mp.mpf(2) ** -128 for b, w in zip(rep.b_over_I, want))
        assert max(abs(x) for x in rep.discrepancies) == 0


def test_one_zero_solution(t1_n6):
    _, roots, _ = t1_n6
    v = beta_vector(SolutionRecord(6, 1, 0, 1), roots)
    assert all(b == 1 for b in v.beta) and v.product == 1


def test_near_solution_product(t1_n6):
    _, roots, _ = t1_n6
    x = near_solution(roots, 10**5, 3)
    v = beta_vector(SolutionRecord(6, 0, 10**5, 1), roots, x=x)
    assert v.type_j == 3 and v.product_ok


def test_structural_zeros(t1_n6):
    _, _, s = t1_n6
    for j in (1, 2, 3, 4):
        assert cramer_uv(s, j).structural_zero < mp.mpf(2) ** -128


def test_u_hand_2x2():
    from splitthue.eta_system import determinant
    b, dd = mp.mpf(3), mp.mpf(-7)
    assert determinant([[1, b], [1, dd]]) == dd - b


def test_u_bases(t1):
    assert abs(u_asymptotics(t1, range(8, 31), 1).fit.r / 0.4 - 1) < 0.05
    assert abs(u_asymptotics(t1, range(8, 31), 4).fit.r / 0.6 - 1) < 0.05


def test_lower_bound_envelopes(t1):
    lb = lower_bound_log_y(t1, 10, 1)
    assert lb.base_good_j == mp.mpf(5) / 2 or float(lb.base_good_j) == 2.5
    assert abs(float(lb.base_any_j) - 5 / 3) < 1e-12
    assert lb.poly_exponent == 0


def test_cramer_needs_degree_four(fl):
    _, _, s = build_for(fl, 4, 128)
    with pytest.raises(ValueError):
        cramer_uv(s, 1)
