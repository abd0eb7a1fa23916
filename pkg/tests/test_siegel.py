import itertools
import random

import pytest
from mpmath import mp

from splitthue.analysis import (
    baker_lower_bound,
    beta_vector,
    choose_indices,
    linear_form_at,
    s_unit_form,
    siegel_residual,
)
from splitthue.errors import BoundViolated, IndexChoiceInvalid
from splitthue.eta_system import build_for
from splitthue.family import SolutionRecord
from splitthue.sequences import family_structures


def test_index_choice():
    assert choose_indices(4, 4) == (1, 2)
    assert choose_indices(3, 4) == (1, 2)
    assert choose_indices(1, 4) == (4, 3)
    assert choose_indices(2, 5) == (5, 4)
    with pytest.raises(IndexChoiceInvalid):
        choose_indices(3, 3)
    assert choose_indices(3, 3, override=(1, 2)) == (1, 2)
    with pytest.raises(IndexChoiceInvalid):
        choose_indices(1, 4, override=(1, 2))


def test_residual_one_zero(t1):
    _, roots, _ = build_for(t1, 5, 256)
    v = beta_vector(SolutionRecord(5, 1, 0, 1), roots)
    assert siegel_residual(roots, v, (1, 2, 3)) == 0


def test_random_non_solutions(t1):
    rng = random.Random(3)
    _, roots, _ = build_for(t1, 7, 256)
    for _ in range(20):
        x, y = rng.randint(-10**9, 10**9), rng.randint(2, 10**6)
        v = beta_vector(SolutionRecord(7, x, y, 1), roots)
        for t in itertools.permutations(range(1, 5), 3):
            assert siegel_residual(roots, v, t) < mp.mpf(2) ** (-236)


def test_s_unit_sides_and_envelope(t1):
    ev = linear_form_at(t1, 10, 10**6, 4)
    assert ev.indices == (4, 1, 2)
    assert ev.agreement < mp.mpf(2) ** (-236)
    assert abs(ev.lam) < ev.envelope
    assert not ev.lambda_zero


def test_y_precondition(t1):
    form, roots, _ = build_for(t1, 5, 256)
    v = beta_vector(SolutionRecord(5, form.g_values[0], 1, 1), roots)
    with pytest.raises(ValueError):
        s_unit_form(roots, v, form, family_structures(t1))


def test_lambda_zero_rerun(t1):
    ev = linear_form_at(t1, 10, 10**6, 1, precision=128)
    assert ev.precision == 256 and not ev.lambda_zero


def test_baker_bound(t1):
    ev = baker_lower_bound(linear_form_at(t1, 8, 10**6, 1), 10**6)
    assert ev.baker_lower < mp.log(abs(ev.lam))
    with pytest.raises(BoundViolated):
        baker_lower_bound(ev, 1e-6)
