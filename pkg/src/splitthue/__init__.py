"""Split Thue equations whose linear factors are linear recurrence sequences.

The package instantiates families ``f_n(x, y) = prod_i (x - G_i(n) y) - y^d``,
certifies their real roots, solves ``f_n(x, y) = +-1`` exactly for bounded
``y``, and checks the asymptotic statements about root approximations,
logarithmic unit matrices and solution growth numerically.
"""

from .certified_roots import CertifiedRoot, isolate_roots, lemma1_residual, verify_certificate
from .config import RunConfig, builtin_family, load_family, loads_family
from .errors import *  # noqa: F401,F403
from .eta_system import EtaSystem, build_eta, build_for, det_Bk, regulator_estimates
from .family import (
    FormInstance,
    SolutionRecord,
    ThueFamily,
    classify_small_y,
    evaluate,
    instantiate,
    trivial_solutions,
)
from .sequences import RecurrenceSpec, check_theorem_conditions, dominant_structure
from .solver import solve_instance, verify_corollary

__version__ = "0.1.0"
