"""Solution-growth analysis: solution vectors, Cramer determinants, the
S-unit linear form, heights, and asymptotic fitting."""

from .bounds import (
    BoundComparison,
    HeightGrowth,
    baker_wustholz_constant,
    bound_comparison_report,
    crossover,
    height_growth,
)
from .cramer import (
    BetaVector,
    CramerSystem,
    LogBetaReport,
    LogYLowerBound,
    UAsymptotics,
    beta_vector,
    cramer_uv,
    gamma_eps_for,
    log_beta_two_ways,
    lower_bound_log_y,
    near_solution,
    predicted_u_base,
    u_asymptotics,
)
from .fitting import MODELS, AsymptoticFit, abs_samples, fit_asymptotics
from .heights import height_product_bound, height_sum_bound, modified_height, weil_height
from .siegel import (
    LinearFormEvaluation,
    baker_lower_bound,
    choose_indices,
    linear_form_at,
    s_unit_form,
    siegel_residual,
)

__all__ = [
    "AsymptoticFit", "BetaVector", "BoundComparison", "CramerSystem", "HeightGrowth",
    "LinearFormEvaluation", "LogBetaReport", "LogYLowerBound", "MODELS", "UAsymptotics",
    "abs_samples", "baker_lower_bound", "baker_wustholz_constant", "beta_vector",
    "bound_comparison_report", "choose_indices", "cramer_uv", "crossover", "fit_asymptotics",
    "gamma_eps_for", "height_growth", "height_product_bound", "height_sum_bound",
    "linear_form_at", "log_beta_two_ways", "lower_bound_log_y", "modified_height",
    "near_solution", "predicted_u_base", "s_unit_form", "siegel_residual", "u_asymptotics",
    "weil_height",
]
