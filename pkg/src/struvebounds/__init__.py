"""Modified Struve function L_nu, its hypergeometric forms, and verified
bounds for the integrals int_0^x exp(-gamma t) t^p L_mu(t) dt."""

from .bounds import (
    BoundReport,
    InequalityId,
    bound_b9_lower,
    bound_b10_upper,
    bound_b11_upper,
    bound_b12_upper,
    bound_b13_upper,
    bound_b14_lower,
    bound_b15_upper,
    corollary_triple,
    evaluate,
)
from .errors import ConvergenceError, DomainError, HypothesisError, StruveError, StruveOverflowError
from .integrate import (
    IntegralSpec,
    QuadratureConfig,
    integral,
    integral_2f3_form,
    integral_closed_form_shifted,
    integral_quadrature,
    integral_series,
)
from .specfun import (
    X_MAX,
    SeriesConfig,
    hyp_pfq,
    ln_gamma,
    struve_l,
    struve_l_large_x,
    struve_l_small_x,
    struve_l_via_1f2,
)
from .verify import ErrorTable, SweepGrid, SweepReport, regenerate_table, sweep, tightness_probe

__version__ = "0.1.0"
