import math

import numpy as np
import pytest

from splitthue.analysis.fitting import fit_asymptotics
from splitthue.errors import FitUnstable, NonPositiveSample


def test_exact_exponential():
    f = fit_asymptotics([(n, 3**n) for n in range(5, 26)])
    assert abs(f.log_r - math.log(3)) < 1e-6 and abs(f.a) < 1e-6


def test_exact_polynomial():
    f = fit_asymptotics([(n, n**3) for n in range(5, 26)])
    assert abs(f.a - 3) < 1e-3 and abs(f.log_r) < 1e-6


def test_noisy_mixed():
    rng = np.random.default_rng(0)
    s = [(n, n**2 * 2.0**n * (1 + 0.01 * rng.standard_normal())) for n in range(5, 41)]
    f = fit_asymptotics(s)
    assert abs(f.a - 2) < 0.3 and abs(f.log_r / math.log(2) - 1) < 0.02


def test_models():
    s = [(n, 7 * 2**n) for n in range(1, 20)]
    f = fit_asymptotics(s, "exp")
    assert f.a == 0 and abs(f.r - 2) < 1e-9 and abs(math.exp(f.log_c) - 7) < 1e-6
    f = fit_asymptotics([(n, n**2.5) for n in range(1, 20)], "poly")
    assert f.log_r == 0 and abs(f.a - 2.5) < 1e-9


def test_gate_rejects_regime_change():
    s = [(n, 2**n if n < 15 else 2**15 * 5 ** (n - 15)) for n in range(5, 26)]
    with pytest.raises(FitUnstable) as e:
        fit_asymptotics(s)
    assert e.value.fit is not None and not e.value.fit.stable


def test_sample_validation():
    with pytest.raises(NonPositiveSample):
        fit_asymptotics([(n, 0 if n == 7 else 2**n) for n in range(1, 12)])
    with pytest.raises(ValueError):
        fit_asymptotics([(n, 2**n) for n in range(1, 5)])
