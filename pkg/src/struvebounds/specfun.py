"""Double-precision evaluation of the modified Struve function L_nu(x) and of
the generalized hypergeometric series used to represent it.

All series are summed by multiplicative term recurrences in a scaled form:
the first term is factored out, the remaining terms are summed relative to it
with compensated accumulation, and the scale is restored at the end (in log
space when the first term alone would under- or overflow). This keeps Gamma
functions of large arguments out of the loop and lets overflow be reported
instead of returned as inf.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConvergenceError, DomainError, StruveOverflowError

__all__ = [
    "X_MAX",
    "SeriesConfig",
    "StruveArgs",
    "HypergeometricArgs",
    "ln_gamma",
    "struve_l",
    "struve_l_small_x",
    "struve_l_large_x",
    "hyp_pfq",
    "struve_l_via_1f2",
]

#: Largest argument accepted by :func:`struve_l`; L_nu(690) ~ 1e297.
X_MAX = 690.0

LOG_FLOAT_MAX = math.log(sys.float_info.max)
LN_SQRT_PI = 0.5 * math.log(math.pi)
SQRT_PI = math.sqrt(math.pi)
GAMMA_3_2 = 0.5 * SQRT_PI


@dataclass(frozen=True)
class SeriesConfig:
    """Convergence policy for infinite series.

    ``trailing_small`` consecutive terms must fall below ``rel_tol`` times the
    partial sum, after the terms have started to decrease, before a series is
    considered converged.
    """

    rel_tol: float = 1e-15
    max_terms: int = 10_000
    trailing_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.trailing_small < 1:
            raise ValueError(f"trailing_small must be >= 1, got {self.trailing_small}")


DEFAULT_SERIES = SeriesConfig()


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class StruveArgs:
    nu: float
    x: float

    def __post_init__(self):
        _check_finite("nu", self.nu)
        _check_finite("x", self.x)
        if not self.nu > -1.5:
            raise DomainError(f"order must satisfy nu > -3/2, got nu={self.nu}")
        if self.x < 0:
            raise DomainError(f"argument must satisfy x >= 0, got x={self.x}")
        if self.x > X_MAX:
            raise StruveOverflowError(
                f"x={self.x} exceeds x_max={X_MAX}; L_nu(x) would overflow a double")


@dataclass(frozen=True)
class HypergeometricArgs:
    a: tuple[float, ...]
    b: tuple[float, ...]
    z: float

    def __post_init__(self):
        for v in (*self.a, *self.b, self.z):
            _check_finite("parameter", v)
        for bj in self.b:
            if bj <= 0 and bj == math.floor(bj):
                raise DomainError(
                    f"denominator parameter {bj} is a non-positive integer")
        if self.z < 0:
            raise DomainError(f"argument must satisfy z >= 0, got z={self.z}")


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"ln_gamma requires finite x > 0, got {x}")
    return math.lgamma(x)


def sum_scaled_series(ratio: Callable[[int], float], cfg: SeriesConfig = DEFAULT_SERIES,
                      what: str = "series") -> float:
    """Sum ``1 + t_1 + t_2 + ...`` where ``t_{k+1} = t_k * ratio(k)``.

    Uses Neumaier's compensated summation. Stops once the terms have begun to
    shrink and ``cfg.trailing_small`` consecutive terms are negligible, or when
    a term is exactly zero (terminating series).
    """
    total = 1.0
    comp = 0.0
    term = 1.0
    past_peak = False
    small_run = 0
    for k in range(cfg.max_terms):
        nxt = term * ratio(k)
        if nxt == 0.0:
            return total + comp
        if abs(nxt) < abs(term):
            past_peak = True
        term = nxt
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        if past_peak and abs(term) <= cfg.rel_tol * abs(total + comp):
            small_run += 1
            if small_run >= cfg.trailing_small:
                return total + comp
        else:
            small_run = 0
    raise ConvergenceError(f"{what} did not converge within {cfg.max_terms} terms")


def scale_series(direct: Callable[[], float], log_prefactor: Callable[[], float],
                 series: float, what: str) -> float:
    """Return ``prefactor * series``.

    The prefactor is evaluated directly when it is a normal double (exp of a
    large log amplifies rounding by the size of the log); the log form is the
    fallback near overflow and underflow.
    """
    try:
        pref = direct()
    except (OverflowError, ValueError):
        pref = math.nan
    if sys.float_info.min < pref < sys.float_info.max:
        value = pref * series
        if math.isinf(value):
            raise StruveOverflowError(f"{what} overflows double precision")
        return value
    if series <= 0:
        return math.exp(log_prefactor()) * series
    log_value = log_prefactor() + math.log(series)
    if log_value > LOG_FLOAT_MAX:
        raise StruveOverflowError(f"{what} overflows double precision (log value {log_value:.1f})")
    return math.exp(log_value)


def struve_l(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Modified Struve function of the first kind, L_nu(x), for nu > -3/2, x >= 0."""
    StruveArgs(nu, x)
    if x == 0:
        if nu > -1:
            return 0.0
        if nu == -1:
            # k = 0 term is (x/2)^0 / (Gamma(3/2) Gamma(1/2)) = 2/pi
            return 2.0 / math.pi
        raise DomainError(f"L_nu(x) diverges as x -> 0 for nu={nu} in (-3/2, -1)")
    q = 0.25 * x * x
    s = sum_scaled_series(lambda k: q / ((k + 1.5) * (k + nu + 1.5)), cfg, "struve_l")
    return scale_series(
        lambda: (0.5 * x) ** (nu + 1) / (GAMMA_3_2 * math.gamma(nu + 1.5)),
        lambda: (nu + 1) * math.log(0.5 * x) - ln_gamma(1.5) - ln_gamma(nu + 1.5),
        s, "struve_l")


def struve_l_small_x(nu: float, x: float) -> float:
    """Leading small-argument term 2 (x/2)^(nu+1) / (sqrt(pi) Gamma(nu + 3/2))."""
    StruveArgs(nu, x)
    if not x > 0:
        raise DomainError(f"struve_l_small_x requires x > 0, got {x}")
    return scale_series(
        lambda: 2.0 * (0.5 * x) ** (nu + 1) / (SQRT_PI * math.gamma(nu + 1.5)),
        lambda: math.log(2.0) - LN_SQRT_PI - ln_gamma(nu + 1.5) + (nu + 1) * math.log(0.5 * x),
        1.0, "struve_l_small_x")


def struve_l_large_x(x: float) -> float:
    """Leading large-argument term e^x / sqrt(2 pi x); independent of the order."""
    _check_finite("x", x)
    if not x > 0:
        raise DomainError(f"struve_l_large_x requires x > 0, got {x}")
    if x > LOG_FLOAT_MAX:
        raise StruveOverflowError(f"e^x overflows for x={x}")
    return math.exp(x) / math.sqrt(2.0 * math.pi * x)


def hyp_pfq(a: Sequence[float], b: Sequence[float], z: float,
            cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Generalized hypergeometric series pFq(a; b; z) for z >= 0 and p <= q."""
    args = HypergeometricArgs(tuple(a), tuple(b), z)
    if len(args.a) > len(args.b):
        raise DomainError(f"only p <= q is supported, got p={len(args.a)}, q={len(args.b)}")
    if z == 0:
        return 1.0

    def ratio(k: int) -> float:
        r = z / (k + 1)
        for ai in args.a:
            r *= ai + k
        for bj in args.b:
            r /= bj + k
        return r

    return sum_scaled_series(ratio, cfg, f"{len(args.a)}F{len(args.b)}")


def struve_l_via_1f2(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """L_nu(x) through its 1F2(1; 3/2, nu + 3/2; x^2/4) representation."""
    StruveArgs(nu, x)
    if not x > 0:
        raise DomainError(f"struve_l_via_1f2 requires x > 0, got {x}")
    f = hyp_pfq((1.0,), (1.5, nu + 1.5), 0.25 * x * x, cfg)
    return scale_series(
        lambda: x ** (nu + 1) / (SQRT_PI * 2.0 ** nu * math.gamma(nu + 1.5)),
        lambda: (nu + 1) * math.log(x) - LN_SQRT_PI - nu * math.log(2.0) - ln_gamma(nu + 1.5),
        f, "struve_l_via_1f2")
