"""Batch verification: inequality sweeps, relative-error tables for the
hypergeometric double inequality, identity checks, and tightness probes.

Results are plain dataclasses with ``as_dict`` methods so the CLI can
serialise them without knowing their internals.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Optional, Sequence

from .bounds import InequalityId, corollary_triple, evaluate
from .errors import HypothesisError, StruveError
from .integrate import (
    DEFAULT_QUADRATURE,
    IntegralSpec,
    QuadratureConfig,
    integral_2f3_form,
    integral_closed_form_shifted,
    integral_quadrature,
    integral_series,
)
from .specfun import DEFAULT_SERIES, SQRT_PI, SeriesConfig, struve_l

TABLE_NU = (-0.25, 0.0, 2.5, 5.0, 7.5, 10.0)
TABLE_X = (0.5, 5.0, 10.0, 15.0, 25.0, 50.0, 100.0)

# Published relative errors, rows follow TABLE_NU and columns TABLE_X.
PUBLISHED_LOWER = (
    (0.3975, 0.2347, 0.1114, 0.0709, 0.0414, 0.0203, 0.0101),
    (0.3315, 0.2099, 0.1071, 0.0695, 0.0409, 0.0202, 0.0101),
    (0.1251, 0.1073, 0.0773, 0.0570, 0.0366, 0.0192, 0.0098),
    (0.0769, 0.0715, 0.0591, 0.0475, 0.0329, 0.0182, 0.0095),
    (0.0555, 0.0533, 0.0472, 0.0402, 0.0296, 0.0173, 0.0093),
    (0.0435, 0.0423, 0.0390, 0.0346, 0.0268, 0.0164, 0.0091),
)
PUBLISHED_UPPER = (
    (0.0087, 0.4204, 0.4288, 0.3267, 0.2137, 0.1134, 0.0584),
    (0.0046, 0.1781, 0.1956, 0.1543, 0.1034, 0.0558, 0.0289),
    (0.0001, 0.0074, 0.0142, 0.0148, 0.0125, 0.0080, 0.0045),
    (0.0000, 0.0015, 0.0038, 0.0049, 0.0050, 0.0037, 0.0023),
    (0.0000, 0.0005, 0.0014, 0.0021, 0.0026, 0.0022, 0.0014),
    (0.0000, 0.0002, 0.0006, 0.0011, 0.0015, 0.0014, 0.0010),
)

TABLE_TOLERANCE = 1e-4


class TableKind(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


class Direction(str, enum.Enum):
    AT_ZERO = "at_zero"
    AT_INFINITY = "at_infinity"


def round_half_away(value: float, places: int = 4) -> float:
    q = Decimal(1).scaleb(-places)
    d = Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP)
    return float(d)


@dataclass(frozen=True)
class ErrorTable:
    kind: TableKind
    nu_values: tuple[float, ...]
    x_values: tuple[float, ...]
    entries: tuple[tuple[float, ...], ...]  # rounded to 4 decimals
    raw: tuple[tuple[float, ...], ...]

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "rows": list(self.nu_values),
            "cols": list(self.x_values),
            "entries": [list(r) for r in self.entries],
        }


def regenerate_table(kind: TableKind | str, nu_values: Sequence[float] = TABLE_NU,
                     x_values: Sequence[float] = TABLE_X,
                     cfg: SeriesConfig = DEFAULT_SERIES) -> ErrorTable:
    """Relative errors (F - lower)/F or (upper - F)/F of the double inequality."""
    kind = TableKind(kind)
    raw = []
    for nu in nu_values:
        row = []
        for x in x_values:
            lower, f, upper = corollary_triple(nu, x, cfg)
            row.append((f - lower) / f if kind is TableKind.LOWER else (upper - f) / f)
        raw.append(tuple(row))
    entries = tuple(tuple(round_half_away(v) for v in row) for row in raw)
    return ErrorTable(kind, tuple(nu_values), tuple(x_values), entries, tuple(raw))


@dataclass(frozen=True)
class CellMismatch:
    nu: float
    x: float
    computed: float
    published: float


def compare_table(table: ErrorTable, tol: float = TABLE_TOLERANCE) -> list[CellMismatch]:
    """Cells of a regenerated table that differ from the reference values by more than ``tol``."""
    published = PUBLISHED_LOWER if table.kind is TableKind.LOWER else PUBLISHED_UPPER
    if table.nu_values != TABLE_NU or table.x_values != TABLE_X:
        raise ValueError("only tables on the published grid can be compared")
    out = []
    for i, j in itertools.product(range(len(TABLE_NU)), range(len(TABLE_X))):
        got, want = table.entries[i][j], published[i][j]
        # rounded values are exact to 4 places; the 1e-12 absorbs binary representation only
        if abs(got - want) > tol + 1e-12:
            out.append(CellMismatch(TABLE_NU[i], TABLE_X[j], got, want))
    return out


def _grid_values(values: Iterable[float]) -> tuple[float, ...]:
    return tuple(sorted(set(float(v) for v in values)))


@dataclass(frozen=True)
class SweepGrid:
    inequality: InequalityId
    nu_values: tuple[float, ...]
    x_values: tuple[float, ...]
    n_values: tuple[float, ...] = (0.0,)
    gamma_values: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        for name in ("nu_values", "x_values", "n_values", "gamma_values"):
            vals = _grid_values(getattr(self, name))
            if not vals:
                raise ValueError(f"{name} must not be empty")
            if not all(math.isfinite(v) for v in vals):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, vals)

    def points(self):
        """All (nu, n, gamma, x) combinations in grid order."""
        return itertools.product(self.nu_values, self.n_values, self.gamma_values, self.x_values)


@dataclass(frozen=True)
class Violation:
    nu: float
    n: float
    gamma: float
    x: float
    signed_slack: float
    relative_slack: float


@dataclass
class SweepReport:
    inequality: InequalityId
    margin: float
    total: int = 0
    skipped: int = 0
    violations: list[Violation] = field(default_factory=list)
    min_slack: float = math.inf
    min_relative_slack: float = math.inf
    max_relative_slack: float = -math.inf

    @property
    def evaluated(self) -> int:
        return self.total - self.skipped

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        finite = lambda v: v if math.isfinite(v) else None
        return {
            "inequality": self.inequality.name,
            "margin": self.margin,
            "total": self.total,
            "skipped": self.skipped,
            "evaluated": self.evaluated,
            "violations": [v.__dict__ for v in self.violations],
            "min_slack": finite(self.min_slack),
            "min_relative_slack": finite(self.min_relative_slack),
            "max_relative_slack": finite(self.max_relative_slack),
        }


def sweep(grid: SweepGrid, margin: float = 1e-9, qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
          cfg: SeriesConfig = DEFAULT_SERIES) -> SweepReport:
    """Check an inequality at every in-hypothesis grid point.

    Out-of-hypothesis points are counted as skipped. A point violates the
    inequality when its slack is below ``-margin * integral``.
    """
    report = SweepReport(grid.inequality, margin)
    for nu, n, gamma, x in grid.points():
        report.total += 1
        if grid.inequality.failed(nu, n, gamma):
            report.skipped += 1
            continue
        try:
            r = evaluate(grid.inequality, nu, x, n, gamma, qcfg, cfg)
        except StruveError as exc:
            raise type(exc)(f"{grid.inequality.name} at nu={nu}, n={n}, gamma={gamma}, x={x}: {exc}") from exc
        report.min_slack = min(report.min_slack, r.signed_slack)
        report.min_relative_slack = min(report.min_relative_slack, r.relative_error)
        report.max_relative_slack = max(report.max_relative_slack, r.relative_error)
        if r.signed_slack < -margin * r.integral_value:
            report.violations.append(Violation(nu, n, gamma, x, r.signed_slack, r.relative_error))
    return report


def tightness_probe(inequality: InequalityId, nu: float, direction: Direction | str,
                    points: Sequence[float], n: float = 0.0, gamma: float = 0.0,
                    qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                    cfg: SeriesConfig = DEFAULT_SERIES) -> list[tuple[float, float]]:
    """Ratios bound/integral at ``points``, ordered toward the limit in ``direction``."""
    direction = Direction(direction)
    xs = sorted(points, reverse=direction is Direction.AT_ZERO)
    out = []
    for x in xs:
        r = evaluate(inequality, nu, x, n, gamma, qcfg, cfg)
        out.append((x, r.bound_value / r.integral_value))
    return out


# ---------------------------------------------------------------------------
# named suites used by `struvebounds verify`


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    sweeps: list[SweepReport] = field(default_factory=list)
    cells_compared: int = 0
    mismatches: list[CellMismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks) and all(s.ok for s in self.sweeps) and not self.mismatches

    @property
    def violations(self) -> int:
        return sum(len(s.violations) for s in self.sweeps)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": [c.__dict__ for c in self.checks],
            "sweeps": [s.as_dict() for s in self.sweeps],
            "violations": self.violations,
            "cells_compared": self.cells_compared,
            "mismatches": [m.__dict__ for m in self.mismatches],
        }


def theorem_grids() -> list[SweepGrid]:
    """The hypothesis grid over which every inequality is swept."""
    grids = []
    for n in (-0.5, 0.0, 1.0):
        nu_min = -(n + 2) / 2
        grids.append(SweepGrid(InequalityId.B9_LOWER, [nu_min + d for d in (0.25, 0.75, 1.5, 3.0)],
                               (0.5, 5, 50), (n,), (0, 0.5, 2)))
    grids.append(SweepGrid(InequalityId.B10_UPPER, (0.5, 1, 5), (0.1, 1, 10, 100)))
    grids.append(SweepGrid(InequalityId.B11_UPPER, (-0.2, 0, 2.5), (0.5, 5, 25), (0, 1)))
    for tag in (InequalityId.B12_UPPER, InequalityId.B13_UPPER):
        grids.append(SweepGrid(tag, (0.5, 2), (1, 10), gamma_values=(0, 0.25, 0.9)))
    grids.append(SweepGrid(InequalityId.B14_LOWER, (-1, 0, 2), (0.5, 5, 50), gamma_values=(0, 0.5, 2)))
    grids.append(SweepGrid(InequalityId.B15_UPPER, (-0.25, 0, 2), (1, 10), gamma_values=(0, 0.5, 0.9)))
    return grids


def identity_grid() -> list[tuple[float, float]]:
    """25 (nu, x) points in [-1, 10] x (0, 100] where nu - 1 > -3/2."""
    return list(itertools.product((-0.25, 0.5, 1.0, 4.5, 10.0), (0.1, 1.0, 7.5, 30.0, 100.0)))


def recurrence_residual(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Relative residual of L_(nu-1) - L_(nu+1) = (2 nu / x) L_nu + (x/2)^nu / (sqrt(pi) Gamma(nu + 3/2))."""
    lm = struve_l(nu - 1, x, cfg)
    rhs = (struve_l(nu + 1, x, cfg) + 2 * nu / x * struve_l(nu, x, cfg)
           + (0.5 * x) ** nu / (SQRT_PI * math.gamma(nu + 1.5)))
    return abs(lm - rhs) / lm


def derivative_residual(nu: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Central difference of x^nu L_nu(x) against x^nu L_(nu-1)(x), relative."""
    h = 1e-5 * x
    g = lambda t: t ** nu * struve_l(nu, t, cfg)
    fd = (g(x + h) - g(x - h)) / (2 * h)
    exact = x ** nu * struve_l(nu - 1, x, cfg)
    return abs(fd - exact) / exact


def three_term_residual(nu: float, n: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Relative residual of the integrated three-term identity linking
    int t^nu L_(nu+n), x^nu L_(nu+n+1) and int t^nu L_(nu+n+2); needs nu > -(n+1)/2."""
    m = nu + n
    c = 2 * nu + n + 1
    lhs = integral_series(IntegralSpec(nu, m, 0.0, x), cfg)
    shifted = integral_series(IntegralSpec(nu, m + 2, 0.0, x), cfg)
    power = x ** (2 * nu + n + 2) / (SQRT_PI * 2 ** (m + 1) * (2 * nu + n + 2) * math.gamma(m + 2.5))
    rhs = (2 * (m + 1) / c * x ** nu * struve_l(m + 1, x, cfg)
           - (n + 1) / c * shifted - (n + 1) / c * power)
    return abs(lhs - rhs) / lhs


def _worst(name: str, values: Iterable[tuple[tuple, float]], tol: float) -> Check:
    point, worst = max(values, key=lambda item: item[1])
    return Check(name, worst <= tol, f"max relative residual {worst:.3e} at {point} (tol {tol:g})")


def run_identities(qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                   cfg: SeriesConfig = DEFAULT_SERIES) -> SuiteResult:
    res = SuiteResult("identities")
    grid = identity_grid()
    res.checks.append(_worst("recurrence", (((nu, x), recurrence_residual(nu, x, cfg)) for nu, x in grid), 1e-10))
    res.checks.append(_worst("derivative", (((nu, x), derivative_residual(nu, x, cfg)) for nu, x in grid), 1e-6))
    res.checks.append(_worst("three_term", (((nu, n, x), three_term_residual(nu, n, x, cfg))
                                            for (nu, x), n in itertools.product(grid, (0.0, 1.0))), 1e-9))
    closed = []
    for nu, x in itertools.product((-1, -0.5, 0, 0.5, 2, 5), (0.5, 1, 5, 10, 50)):
        q = integral_quadrature(IntegralSpec(nu + 1, nu, 0.0, x), qcfg, cfg)
        c = integral_closed_form_shifted(nu, x, cfg)
        closed.append(((nu, x), abs(q - c) / c))
    res.checks.append(_worst("closed_form", closed, 1e-9))
    hyp = []
    for nu, x in itertools.product((-0.25, 0, 0.5, 2.5, 5), (0.5, 1, 5, 10, 25)):
        s = integral_series(IntegralSpec(nu, nu, 0.0, x), cfg)
        hyp.append(((nu, x), abs(integral_2f3_form(nu, x, cfg) - s) / s))
    res.checks.append(_worst("2f3_form", hyp, 1e-9))
    return res


def run_inequalities(margin: float = 1e-9, qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                     cfg: SeriesConfig = DEFAULT_SERIES) -> SuiteResult:
    res = SuiteResult("inequalities")
    for grid in theorem_grids():
        res.sweeps.append(sweep(grid, margin, qcfg, cfg))
    return res


def run_tables(cfg: SeriesConfig = DEFAULT_SERIES) -> SuiteResult:
    res = SuiteResult("tables")
    for kind in TableKind:
        table = regenerate_table(kind, cfg=cfg)
        res.cells_compared += len(TABLE_NU) * len(TABLE_X)
        bad = compare_table(table)
        res.mismatches.extend(bad)
        res.checks.append(Check(f"table_{kind.value}", not bad,
                                f"{len(bad)} of {len(TABLE_NU) * len(TABLE_X)} cells outside +-{TABLE_TOLERANCE:g}"))
    return res


def _toward_one(ratios: Sequence[float]) -> bool:
    gaps = [abs(r - 1) for r in ratios]
    return all(b < a for a, b in zip(gaps, gaps[1:]))


def run_tightness(qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                  cfg: SeriesConfig = DEFAULT_SERIES) -> SuiteResult:
    res = SuiteResult("tightness")
    probe = tightness_probe(InequalityId.B10_UPPER, 1.0, Direction.AT_INFINITY, (10, 25, 50, 100), qcfg=qcfg, cfg=cfg)
    ratios = [r for _, r in probe]
    res.checks.append(Check("B10_UPPER at infinity", _toward_one(ratios) and all(r > 1 for r in ratios),
                            f"ratios {[f'{r:.6f}' for r in ratios]}"))
    probe = tightness_probe(InequalityId.COR_UPPER, 0.5, Direction.AT_ZERO, (1e-1, 1e-2, 1e-3), qcfg=qcfg, cfg=cfg)
    ratios = [r for _, r in probe]
    res.checks.append(Check("COR_UPPER at zero", _toward_one(ratios) and abs(ratios[-1] - 1) < 1e-3,
                            f"ratios {[f'{r:.8f}' for r in ratios]}"))
    zero_limit = []
    for nu in (0.0, 1.0, 5.0):
        lower, f, upper = corollary_triple(nu, 1e-3, cfg)
        zero_limit.append(upper / f)
    res.checks.append(Check("corollary U/F at x=1e-3", all(0.999 <= r <= 1.001 for r in zero_limit),
                            f"ratios {[f'{r:.8f}' for r in zero_limit]}"))
    x = 1e-2
    r = evaluate(InequalityId.B14_LOWER, 0.0, x, gamma=0.5, qcfg=qcfg, cfg=cfg)
    res.checks.append(Check("B14_LOWER constant 1.01 fails near 0", 1.01 * r.bound_value > r.integral_value,
                            f"1.01*bound={1.01 * r.bound_value:.6e}, integral={r.integral_value:.6e}"))
    for nu in (0.5, 1.0):
        e25 = evaluate(InequalityId.COR_LOWER, nu, 25.0, cfg=cfg).relative_error
        e100 = evaluate(InequalityId.COR_LOWER, nu, 100.0, cfg=cfg).relative_error
        res.checks.append(Check(f"COR_LOWER tail decreasing nu={nu:g}", e100 < e25,
                                f"x=25: {e25:.6f}, x=100: {e100:.6f}"))
    return res


SUITES = {
    "identities": run_identities,
    "inequalities": run_inequalities,
    "tables": run_tables,
    "tightness": run_tightness,
}


def run_suite(name: str, qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
              cfg: SeriesConfig = DEFAULT_SERIES, margin: float = 1e-9) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; expected 'all' or one of {list(SUITES)}")
        if suite == "tables":
            out.append(run_tables(cfg))
        elif suite == "inequalities":
            out.append(run_inequalities(margin, qcfg, cfg))
        else:
            out.append(SUITES[suite](qcfg, cfg))
    return out
