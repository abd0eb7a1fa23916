from fractions import Fraction

import pytest

from splitthue.errors import NegativeDominantRoot, NoDominantRoot, NonIntegralValue
from splitthue.family import ThueFamily
from splitthue.sequences import (
    RecurrenceSpec,
    check_theorem_conditions,
    dominant_structure,
    eval_exact,
    family_structures,
    gamma_eps,
    growth_gap,
    subsequence,
)


def test_fibonacci_offset_one():
    fib = RecurrenceSpec.recurrence([1, 1], [1, 1], "F", offset=1)
    assert fib(10) == 55
    assert fib(0) == 0  # backward extension


def test_exponential_and_recurrence_agree():
    e = RecurrenceSpec.exponential([(1, 5), (1, 2)])
    r = RecurrenceSpec.recurrence([7, -10], [2, 7])
    assert [e(n) for n in range(20)] == [r(n) for n in range(20)]


def test_rational_terms_must_be_integral():
    with pytest.raises(NonIntegralValue):
        RecurrenceSpec.exponential([(Fraction(1, 2), 3)])
    half = RecurrenceSpec.exponential([(Fraction(1, 2), 3), (Fraction(1, 2), 1)])
    assert [half(n) for n in range(5)] == [1, 2, 5, 14, 41]


def test_initial_count_mismatch():
    with pytest.raises(ValueError):
        RecurrenceSpec.recurrence([1, 1], [1])


def test_dominant_structure_exact():
    s = dominant_structure(RecurrenceSpec.exponential([(1, 5), (1, 2)]))
    assert (s.gamma, s.g, s.delta, s.h) == (5, 1, 2, 1)
    assert s.exact


def test_dominant_structure_numeric_fibonacci():
    s = dominant_structure(RecurrenceSpec.recurrence([1, 1], [0, 1]))
    phi = (1 + 5**0.5) / 2
    assert abs(float(s.gamma) - phi) < 1e-12
    assert abs(float(s.g) - 1 / 5**0.5) < 1e-12
    assert abs(float(s.delta) + 1 / phi) < 1e-12


def test_dominant_root_errors():
    with pytest.raises(NegativeDominantRoot):
        dominant_structure(RecurrenceSpec.exponential([(1, -3), (1, 2)]))
    with pytest.raises(NoDominantRoot):
        dominant_structure(RecurrenceSpec.exponential([(1, 3), (1, -3)]))


def test_subsequence_clears_negative_root():
    spec = RecurrenceSpec.exponential([(1, -3), (1, 2)])
    even = subsequence(spec, 0)
    assert [even(k) for k in range(6)] == [spec(2 * k) for k in range(6)]
    assert dominant_structure(even).gamma == 9


def test_t1_conditions(t1):
    rep = check_theorem_conditions(t1)
    assert rep.passed
    assert rep.witnesses["gamma_dm2_squared"] == "9"
    assert rep.witnesses["gamma_times_abs_delta_d"] == "10"


def test_conditions_fail_for_equal_deltas():
    fam = ThueFamily((RecurrenceSpec.zero(), RecurrenceSpec.exponential([(1, 2)]),
                      RecurrenceSpec.recurrence([1, 1], [0, 1], "F"),
                      RecurrenceSpec.recurrence([1, 1], [2, 1], "L")))
    assert not check_theorem_conditions(fam).passed


def test_conditions_need_degree_four(fl):
    with pytest.raises(ValueError):
        check_theorem_conditions(fl)


def test_gamma_eps_t1(t1):
    st = family_structures(t1)
    assert [gamma_eps(st, i) for i in range(1, 5)] == [75, 75, 50, 50]


def test_growth_gap(t1):
    g = growth_gap(t1, 3, 4, 10)
    assert g.value == 2**10 - 1 and g.predicted_base == 2
    assert growth_gap(t1, 1, 2, 10).predicted_base == 3


def test_eval_exact_negative_n():
    with pytest.raises(ValueError):
        eval_exact(RecurrenceSpec.exponential([(1, 2)]), -1)
