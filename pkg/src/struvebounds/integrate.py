"""Weighted integrals F(p, mu, gamma, x) = int_0^x exp(-gamma t) t^p L_mu(t) dt.

Two independent routes are provided:

* :func:`integral_series` integrates the power series of L_mu term by term
  (undamped case only, gamma = 0);
* :func:`integral_quadrature` handles any gamma >= 0 by splitting [0, x] at a
  small delta. The head [0, delta] is integrated analytically, which removes
  the t^(p+mu+1) endpoint behaviour from the numerical part; the tail
  [delta, x] goes to adaptive Gauss-Kronrod quadrature.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ConvergenceError, DomainError, StruveOverflowError
from .specfun import (
    DEFAULT_SERIES,
    GAMMA_3_2,
    LN_SQRT_PI,
    SQRT_PI,
    X_MAX,
    SeriesConfig,
    hyp_pfq,
    ln_gamma,
    scale_series,
    struve_l,
    sum_scaled_series,
)

__all__ = [
    "IntegralSpec",
    "QuadratureConfig",
    "integral_series",
    "integral_quadrature",
    "integral",
    "integral_closed_form_shifted",
    "integral_2f3_form",
    "gauss_kronrod",
]


@dataclass(frozen=True)
class IntegralSpec:
    """The integral int_0^x exp(-gamma t) t^p L_mu(t) dt."""

    p: float
    mu: float
    gamma: float
    x: float

    def __post_init__(self):
        for name in ("p", "mu", "gamma", "x"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
        if not self.mu > -1.5:
            raise DomainError(f"order must satisfy mu > -3/2, got mu={self.mu}")
        if self.gamma < 0:
            raise DomainError(f"damping must satisfy gamma >= 0, got gamma={self.gamma}")
        if not self.x > 0:
            raise DomainError(f"upper limit must satisfy x > 0, got x={self.x}")
        if self.x > X_MAX:
            raise StruveOverflowError(f"x={self.x} exceeds x_max={X_MAX}")
        if not self.p + self.mu > -2:
            raise DomainError(
                f"integral diverges at 0 unless p + mu > -2, got p + mu = {self.p + self.mu:g}")


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_subdivisions: int = 2000
    # None means min(x, 1) / 8
    series_split: Optional[float] = None

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.abs_tol < 0:
            raise ValueError(f"abs_tol must be non-negative, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")

    def split_point(self, x: float) -> float:
        delta = min(x, 1.0) / 8 if self.series_split is None else self.series_split
        if not 0 < delta < x:
            raise ValueError(f"series split must lie in (0, x={x}), got {delta}")
        return delta


DEFAULT_QUADRATURE = QuadratureConfig()


def _series_ratio(p: float, mu: float, q: float) -> Callable[[int], float]:
    s0 = p + mu + 2

    def ratio(k: int) -> float:
        s = s0 + 2 * k
        return q * s / ((s + 2) * (k + 1.5) * (k + mu + 1.5))

    return ratio


def _leading_term(p: float, mu: float, x: float):
    """Direct and log forms of (1/2)^(mu+1) x^s / (s Gamma(3/2) Gamma(mu+3/2)), s = p+mu+2."""
    s = p + mu + 2
    direct = lambda: 0.5 ** (mu + 1) * x ** s / (s * GAMMA_3_2 * math.gamma(mu + 1.5))
    log = lambda: (-(mu + 1) * math.log(2.0) + s * math.log(x) - math.log(s)
                   - ln_gamma(1.5) - ln_gamma(mu + 1.5))
    return direct, log


def integral_series(spec: IntegralSpec, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Undamped integral by term-by-term integration of the series of L_mu."""
    if spec.gamma != 0:
        raise DomainError(f"integral_series requires gamma = 0, got gamma={spec.gamma}")
    p, mu, x = spec.p, spec.mu, spec.x
    s = sum_scaled_series(_series_ratio(p, mu, 0.25 * x * x), cfg, "integral_series")
    direct, log = _leading_term(p, mu, x)
    return scale_series(direct, log, s, "integral_series")


def _damped_head(p: float, mu: float, gamma: float, delta: float, cfg: SeriesConfig) -> float:
    """int_0^delta exp(-gamma t) t^p L_mu(t) dt, analytically.

    Each series term c_k t^(s_k - 1) integrates against exp(-gamma t) to
    c_k delta^s_k / s_k * exp(-z) * sum_j z^j / (s_k + 1)_j with z = gamma delta,
    a series of positive terms (no cancellation for any gamma).
    """
    z = gamma * delta
    ratio = _series_ratio(p, mu, 0.25 * delta * delta)
    s0 = p + mu + 2

    def damping(s: float) -> float:
        if z == 0:
            return 1.0
        return math.exp(-z) * sum_scaled_series(lambda j: z / (s + 1 + j), cfg, "damped head")

    terms = []
    t = 1.0
    small_run = 0
    for k in range(cfg.max_terms):
        terms.append(t * damping(s0 + 2 * k))
        if terms[-1] <= cfg.rel_tol * terms[0]:
            small_run += 1
            if small_run >= cfg.trailing_small:
                break
        t *= ratio(k)
        if t == 0.0:
            break
    else:
        raise ConvergenceError(f"damped head series did not converge within {cfg.max_terms} terms")
    direct, log = _leading_term(p, mu, delta)
    return scale_series(direct, log, math.fsum(terms), "damped head")


# 15-point Kronrod nodes on [-1, 1] (abscissae >= 0) with the embedded 7-point Gauss rule.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """Kronrod estimate and |Kronrod - Gauss| on [a, b]."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for i in range(7):
        d = h * _XGK[i]
        pair = f(c - d) + f(c + d)
        kron += _WGK[i] * pair
        if i % 2 == 1:
            gauss += _WG[i // 2] * pair
    return kron * h, abs(kron - gauss) * h


def gauss_kronrod(f: Callable[[float], float], a: float, b: float,
                  rel_tol: float = 1e-12, abs_tol: float = 1e-300,
                  max_subdivisions: int = 2000) -> tuple[float, float]:
    """Globally adaptive G7-K15 quadrature of ``f`` over [a, b].

    The interval with the largest error estimate is bisected until the summed
    estimate is at most ``max(rel_tol * |integral|, abs_tol)``. Returns the
    integral and its error estimate.
    """
    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    subdivisions = 0
    while total_err > max(rel_tol * abs(total), abs_tol):
        if subdivisions >= max_subdivisions:
            raise ConvergenceError(
                f"quadrature on [{a:g}, {b:g}] hit {max_subdivisions} subdivisions "
                f"(error estimate {total_err:.3g}, integral {total:.6g})")
        _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for left, right in ((lo, mid), (mid, hi)):
            v, e = _gk15(f, left, right)
            heapq.heappush(heap, (-e, left, right, v))
        subdivisions += 1
        # re-sum rather than update incrementally, so cancellation cannot accumulate
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)
    return total, total_err


def integral_quadrature(spec: IntegralSpec, qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                        cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Integral for any gamma >= 0: analytic head on [0, delta], adaptive quadrature on [delta, x]."""
    p, mu, gamma, x = spec.p, spec.mu, spec.gamma, spec.x
    delta = qcfg.split_point(x)
    head = _damped_head(p, mu, gamma, delta, cfg)

    def integrand(t: float) -> float:
        v = struve_l(mu, t, cfg) * math.exp(-gamma * t) * t ** p
        if math.isinf(v):
            raise StruveOverflowError(f"integrand overflows at t={t}")
        return v

    tail, _ = gauss_kronrod(integrand, delta, x, qcfg.rel_tol, qcfg.abs_tol, qcfg.max_subdivisions)
    return head + tail


def integral(spec: IntegralSpec, method: str = "auto", qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
             cfg: SeriesConfig = DEFAULT_SERIES) -> tuple[float, str]:
    """Evaluate ``spec`` by ``method`` ('series', 'quadrature' or 'auto').

    'auto' prefers the series whenever gamma = 0. Returns (value, method used).
    """
    if method == "auto":
        method = "series" if spec.gamma == 0 else "quadrature"
    if method == "series":
        return integral_series(spec, cfg), method
    if method == "quadrature":
        return integral_quadrature(spec, qcfg, cfg), method
    raise ValueError(f"unknown integration method {method!r}")


def integral_closed_form_shifted(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """int_0^x t^(nu+1) L_nu(t) dt = x^(nu+1) L_(nu+1)(x)."""
    if not nu > -1.5:
        raise DomainError(f"order must satisfy nu > -3/2, got nu={nu}")
    if not x > 0:
        raise DomainError(f"upper limit must satisfy x > 0, got x={x}")
    value = x ** (nu + 1) * struve_l(nu + 1, x, cfg)
    if math.isinf(value):
        raise StruveOverflowError(f"x^(nu+1) L_(nu+1)(x) overflows at nu={nu}, x={x}")
    return value


def integral_2f3_form(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """int_0^x t^nu L_nu(t) dt through 2F3(1, nu+1; 3/2, nu+3/2, nu+2; x^2/4)."""
    if not nu > -1:
        raise DomainError(f"the 2F3 form requires nu > -1, got nu={nu}")
    if not 0 < x <= X_MAX:
        raise DomainError(f"upper limit must satisfy 0 < x <= {X_MAX}, got x={x}")
    f = hyp_pfq((1.0, nu + 1), (1.5, nu + 1.5, nu + 2), 0.25 * x * x, cfg)
    return scale_series(
        lambda: x ** (2 * nu + 2) / (SQRT_PI * 2.0 ** (nu + 1) * (nu + 1) * math.gamma(nu + 1.5)),
        lambda: ((2 * nu + 2) * math.log(x) - LN_SQRT_PI - (nu + 1) * math.log(2.0)
                 - math.log(nu + 1) - ln_gamma(nu + 1.5)),
        f, "2F3 integral form")
