"""Lower and upper bounds for the damped Struve integrals, and the double
inequality they imply for F_nu(x) = x^(-nu) int_0^x t^nu L_nu(t) dt.

Every inequality carries its hypotheses as data. Evaluation outside them
raises :class:`HypothesisError` instead of returning a number that the
inequality says nothing about.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import HypothesisError
from .integrate import (
    DEFAULT_QUADRATURE,
    IntegralSpec,
    QuadratureConfig,
    integral,
    integral_series,
)
from .specfun import (
    DEFAULT_SERIES,
    LN_SQRT_PI,
    SQRT_PI,
    SeriesConfig,
    hyp_pfq,
    ln_gamma,
    scale_series,
    struve_l,
)

__all__ = [
    "Hypothesis",
    "InequalityId",
    "BoundReport",
    "bound_b9_lower",
    "bound_b10_upper",
    "bound_b11_upper",
    "bound_b12_upper",
    "bound_b13_upper",
    "bound_b14_lower",
    "bound_b15_upper",
    "corollary_triple",
    "evaluate",
]


@dataclass(frozen=True)
class Hypothesis:
    text: str
    holds: Callable[[float, float, float], bool]  # (nu, n, gamma) -> bool


_N_GT_M1 = Hypothesis("n > -1", lambda nu, n, g: n > -1)
_N_ZERO = Hypothesis("n = 0 (no n parameter)", lambda nu, n, g: n == 0)
_G_ZERO = Hypothesis("gamma = 0 (undamped)", lambda nu, n, g: g == 0)
_G_NONNEG = Hypothesis("gamma >= 0", lambda nu, n, g: g >= 0)
_G_UNIT = Hypothesis("0 <= gamma < 1", lambda nu, n, g: 0 <= g < 1)
_NU_HALF = Hypothesis("nu >= 1/2", lambda nu, n, g: nu >= 0.5)


class InequalityId(enum.Enum):
    B9_LOWER = "B9_LOWER"
    B10_UPPER = "B10_UPPER"
    B11_UPPER = "B11_UPPER"
    B12_UPPER = "B12_UPPER"
    B13_UPPER = "B13_UPPER"
    B14_LOWER = "B14_LOWER"
    B15_UPPER = "B15_UPPER"
    COR_LOWER = "COR_LOWER"
    COR_UPPER = "COR_UPPER"

    @property
    def is_upper(self) -> bool:
        return self.name.endswith("UPPER")

    @property
    def hypotheses(self) -> tuple[Hypothesis, ...]:
        return _HYPOTHESES[self.name]

    def failed(self, nu: float, n: float = 0.0, gamma: float = 0.0) -> list[str]:
        return [h.text for h in self.hypotheses if not h.holds(nu, n, gamma)]

    def check(self, nu: float, n: float = 0.0, gamma: float = 0.0) -> None:
        bad = self.failed(nu, n, gamma)
        if bad:
            raise HypothesisError(
                f"{self.name} requires {' and '.join(bad)} (got nu={nu:g}, n={n:g}, gamma={gamma:g})")

    def integral_spec(self, nu: float, x: float, n: float = 0.0, gamma: float = 0.0) -> IntegralSpec:
        """The integral this inequality bounds (for COR_*, the unnormalised F_nu)."""
        if self in (InequalityId.B9_LOWER, InequalityId.B11_UPPER):
            return IntegralSpec(nu, nu + n, gamma, x)
        if self in (InequalityId.B14_LOWER, InequalityId.B15_UPPER):
            return IntegralSpec(nu + 1, nu, gamma, x)
        return IntegralSpec(nu, nu, gamma, x)

    @classmethod
    def parse(cls, tag: str) -> "InequalityId":
        try:
            return cls[tag.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown inequality {tag!r}; expected one of {[m.name for m in cls]}") from None


_NU_GT_HALF_NEG = Hypothesis("nu > -1/2", lambda nu, n, g: nu > -0.5)

_HYPOTHESES = {
    "B9_LOWER": (_N_GT_M1, Hypothesis("nu > -(n+2)/2", lambda nu, n, g: nu > -(n + 2) / 2), _G_NONNEG),
    "B10_UPPER": (_NU_HALF, _N_ZERO, _G_ZERO),
    "B11_UPPER": (_N_GT_M1, Hypothesis("nu > -(n+1)/2", lambda nu, n, g: nu > -(n + 1) / 2), _G_ZERO),
    "B12_UPPER": (_NU_HALF, _N_ZERO, _G_UNIT),
    "B13_UPPER": (_NU_HALF, _N_ZERO, _G_UNIT),
    "B14_LOWER": (Hypothesis("nu > -3/2", lambda nu, n, g: nu > -1.5), _N_ZERO, _G_NONNEG),
    "B15_UPPER": (_NU_GT_HALF_NEG, _N_ZERO, _G_UNIT),
    "COR_LOWER": (_NU_GT_HALF_NEG, _N_ZERO, _G_ZERO),
    "COR_UPPER": (_NU_GT_HALF_NEG, _N_ZERO, _G_ZERO),
}


@dataclass(frozen=True)
class BoundReport:
    inequality: InequalityId
    spec: IntegralSpec
    nu: float
    n: float
    bound_value: float
    integral_value: float
    signed_slack: float
    relative_error: float

    def as_dict(self) -> dict:
        return {
            "inequality": self.inequality.name,
            "point": {"nu": self.nu, "n": self.n, "gamma": self.spec.gamma, "x": self.spec.x},
            "bound": self.bound_value,
            "integral": self.integral_value,
            "slack": self.signed_slack,
            "rel_error": self.relative_error,
        }


def _power_over_gamma(power: float, x: float, two_exp: float, denom: float, gamma_arg: float) -> float:
    """x^power / (sqrt(pi) 2^two_exp denom Gamma(gamma_arg)), with denom > 0."""
    return scale_series(
        lambda: x ** power / (SQRT_PI * 2.0 ** two_exp * denom * math.gamma(gamma_arg)),
        lambda: (power * math.log(x) - LN_SQRT_PI - two_exp * math.log(2.0)
                 - math.log(denom) - ln_gamma(gamma_arg)),
        1.0, "bound correction term")


def bound_b9_lower(nu: float, n: float, gamma: float, x: float,
                   cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """exp(-gamma x) x^nu L_(nu+n+1)(x), below int_0^x exp(-gamma t) t^nu L_(nu+n)(t) dt."""
    InequalityId.B9_LOWER.check(nu, n, gamma)
    return math.exp(-gamma * x) * x ** nu * struve_l(nu + n + 1, x, cfg)


def bound_b10_upper(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    InequalityId.B10_UPPER.check(nu)
    return x ** nu * struve_l(nu, x, cfg)


def bound_b11_upper(nu: float, n: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Upper bound for int_0^x t^nu L_(nu+n)(t) dt built from L_(nu+n+1) and L_(nu+n+3)."""
    InequalityId.B11_UPPER.check(nu, n)
    m = nu + n
    tail = (n + 1) * _power_over_gamma(m + 2, x, m + 1, 2 * nu + n + 2, m + 2.5)
    bracket = 2 * (m + 1) * struve_l(m + 1, x, cfg) - (n + 1) * struve_l(m + 3, x, cfg) - tail
    return x ** nu * bracket / (2 * nu + n + 1)


def bound_b12_upper(nu: float, gamma: float, x: float,
                    cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """exp(-gamma x) / (1 - gamma) times the undamped integral int_0^x t^nu L_nu(t) dt."""
    InequalityId.B12_UPPER.check(nu, 0.0, gamma)
    undamped = integral_series(IntegralSpec(nu, nu, 0.0, x), cfg)
    return math.exp(-gamma * x) / (1 - gamma) * undamped


def bound_b13_upper(nu: float, gamma: float, x: float,
                    cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    InequalityId.B13_UPPER.check(nu, 0.0, gamma)
    tail = _power_over_gamma(nu + 2, x, nu + 2, nu + 1, nu + 2.5)
    bracket = 2 * (nu + 1) * struve_l(nu + 1, x, cfg) - struve_l(nu + 3, x, cfg) - tail
    return math.exp(-gamma * x) * x ** nu / ((2 * nu + 1) * (1 - gamma)) * bracket


def bound_b14_lower(nu: float, gamma: float, x: float,
                    cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """exp(-gamma x) x^(nu+1) L_(nu+1)(x); equals the integral exactly when gamma = 0."""
    InequalityId.B14_LOWER.check(nu, 0.0, gamma)
    return math.exp(-gamma * x) * x ** (nu + 1) * struve_l(nu + 1, x, cfg)


def bound_b15_upper(nu: float, gamma: float, x: float,
                    cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    InequalityId.B15_UPPER.check(nu, 0.0, gamma)
    return math.exp(-gamma * x) * x ** (nu + 1) * struve_l(nu + 1, x, cfg) / (1 - gamma)


def corollary_triple(nu: float, x: float,
                     cfg: SeriesConfig = DEFAULT_SERIES) -> tuple[float, float, float]:
    """(lower, F_nu(x), upper) for the hypergeometric double inequality, nu > -1/2."""
    InequalityId.COR_LOWER.check(nu)
    lower = struve_l(nu + 1, x, cfg)
    f23 = hyp_pfq((1.0, nu + 1), (1.5, nu + 1.5, nu + 2), 0.25 * x * x, cfg)
    middle = scale_series(
        lambda: x ** (nu + 2) / (SQRT_PI * 2.0 ** (nu + 1) * (nu + 1) * math.gamma(nu + 1.5)),
        lambda: ((nu + 2) * math.log(x) - LN_SQRT_PI - (nu + 1) * math.log(2.0)
                 - math.log(nu + 1) - ln_gamma(nu + 1.5)),
        f23, "F_nu")
    l3 = struve_l(nu + 3, x, cfg)
    upper = (lower * (1 + (1 - l3 / lower) / (2 * nu + 1))
             - _power_over_gamma(nu + 2, x, nu + 2, (2 * nu + 1) * (nu + 1), nu + 2.5))
    return lower, middle, upper


def evaluate(tag: InequalityId, nu: float, x: float, n: float = 0.0, gamma: float = 0.0,
             qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
             cfg: SeriesConfig = DEFAULT_SERIES) -> BoundReport:
    """Evaluate one inequality instance against its integral.

    The integral uses the series when gamma = 0 and quadrature otherwise. For
    the COR_* tags the compared quantity is F_nu(x) itself.
    """
    tag.check(nu, n, gamma)
    spec = tag.integral_spec(nu, x, n, gamma)
    if tag in (InequalityId.COR_LOWER, InequalityId.COR_UPPER):
        lower, value, upper = corollary_triple(nu, x, cfg)
        bound = upper if tag is InequalityId.COR_UPPER else lower
    else:
        value, _ = integral(spec, "auto", qcfg, cfg)
        if tag is InequalityId.B9_LOWER:
            bound = bound_b9_lower(nu, n, gamma, x, cfg)
        elif tag is InequalityId.B10_UPPER:
            bound = bound_b10_upper(nu, x, cfg)
        elif tag is InequalityId.B11_UPPER:
            bound = bound_b11_upper(nu, n, x, cfg)
        elif tag is InequalityId.B12_UPPER:
            bound = bound_b12_upper(nu, gamma, x, cfg)
        elif tag is InequalityId.B13_UPPER:
            bound = bound_b13_upper(nu, gamma, x, cfg)
        elif tag is InequalityId.B14_LOWER:
            bound = bound_b14_lower(nu, gamma, x, cfg)
        else:
            bound = bound_b15_upper(nu, gamma, x, cfg)
    slack = bound - value if tag.is_upper else value - bound
    return BoundReport(tag, spec, nu, n, bound, value, slack, slack / value)
