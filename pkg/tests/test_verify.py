import math

import pytest

from struvebounds.bounds import InequalityId
from struvebounds.errors import HypothesisError
from struvebounds.verify import (
    PUBLISHED_LOWER,
    TABLE_NU,
    TABLE_X,
    Direction,
    ErrorTable,
    SweepGrid,
    TableKind,
    compare_table,
    derivative_residual,
    recurrence_residual,
    regenerate_table,
    round_half_away,
    run_suite,
    run_tightness,
    sweep,
    theorem_grids,
    three_term_residual,
    tightness_probe,
)


@pytest.fixture(scope="module")
def lower():
    return regenerate_table(TableKind.LOWER)


@pytest.fixture(scope="module")
def upper():
    return regenerate_table(TableKind.UPPER)


class TestRounding:
    @pytest.mark.parametrize("v,want", [(0.12345, 0.1235), (0.00005, 0.0001), (-0.00005, -0.0001),
                                        (0.39754, 0.3975), (0.0, 0.0)])
    def test_half_away(self, v, want):
        assert round_half_away(v) == want


class TestTables:
    def test_shape(self, lower, upper):
        for t in (lower, upper):
            assert len(t.entries) == 6 and all(len(r) == 7 for r in t.entries)
            assert all(0 <= v < 1 for r in t.raw for v in r)

    @pytest.mark.parametrize("kind,nu,x,want", [("lower", -0.25, 0.5, 0.3975), ("upper", 5.0, 25.0, 0.0050),
                                                ("lower", 10.0, 10.0, 0.0390)])
    def test_cells(self, kind, nu, x, want, lower, upper):
        t = lower if kind == "lower" else upper
        assert abs(t.entries[TABLE_NU.index(nu)][TABLE_X.index(x)] - want) <= 1e-4

    def test_deterministic(self, lower):
        assert regenerate_table("lower") == lower

    def test_lower_rows_decreasing(self, lower):
        for row in lower.raw:
            assert all(b < a for a, b in zip(row, row[1:]))

    def test_upper_rows_interior_maximum(self, upper):
        for nu, row in zip(TABLE_NU, upper.raw):
            if nu >= 0:
                k = row.index(max(row))
                assert 0 < k < len(row) - 1

    def test_columns_decreasing(self, lower, upper):
        for t in (lower, upper):
            for j in range(len(TABLE_X)):
                col = [row[j] for row in t.raw]
                assert all(b < a for a, b in zip(col, col[1:]))

    def test_compare_detects_changes(self, lower):
        entries = [list(r) for r in lower.entries]
        entries[0][0] += 0.0002
        bad = compare_table(ErrorTable(lower.kind, lower.nu_values, lower.x_values,
                                       tuple(map(tuple, entries)), lower.raw))
        assert (bad[0].nu, bad[0].x) == (-0.25, 0.5)
        assert bad[0].published == PUBLISHED_LOWER[0][0]

    def test_compare_off_grid(self):
        with pytest.raises(ValueError):
            compare_table(regenerate_table("lower", nu_values=(0.0,), x_values=(1.0,)))

    def test_as_dict(self, upper):
        d = upper.as_dict()
        assert d["kind"] == "upper" and d["rows"] == list(TABLE_NU) and d["cols"] == list(TABLE_X)


class TestSweep:
    def test_grid_normalised(self):
        g = SweepGrid(InequalityId.B10_UPPER, [5, 1, 1], [10, 0.1])
        assert g.nu_values == (1.0, 5.0) and g.x_values == (0.1, 10.0)
        assert len(list(g.points())) == 4

    @pytest.mark.parametrize("field", ["nu_values", "x_values"])
    def test_grid_empty(self, field):
        kwargs = {"nu_values": (1,), "x_values": (1,), field: ()}
        with pytest.raises(ValueError):
            SweepGrid(InequalityId.B10_UPPER, **kwargs)

    def test_skipped_points_counted(self):
        r = sweep(SweepGrid(InequalityId.B10_UPPER, (0.0, 1.0), (0.1, 1, 10)))
        assert (r.total, r.skipped, r.evaluated) == (6, 3, 3)
        assert r.ok

    def test_unused_axis_skipped(self):
        r = sweep(SweepGrid(InequalityId.B14_LOWER, (0.0,), (1.0,), n_values=(0, 1)))
        assert r.skipped == 1

    def test_violation_detection(self):
        # a negative margin turns every point with positive slack into a "violation"
        r = sweep(SweepGrid(InequalityId.COR_LOWER, (0.0,), (1.0, 5.0)), margin=-0.5)
        assert len(r.violations) == 2 and not r.ok

    @pytest.mark.parametrize("grid", theorem_grids(), ids=lambda g: g.inequality.name)
    def test_theorem_grid(self, grid):
        r = sweep(grid, margin=1e-9)
        assert r.ok, r.violations
        assert r.evaluated > 0

    def test_as_dict(self):
        d = sweep(SweepGrid(InequalityId.B10_UPPER, (0.0,), (1.0,))).as_dict()
        assert d["evaluated"] == 0 and d["min_slack"] is None


class TestTightness:
    def test_b10_at_infinity(self):
        ratios = [r for _, r in tightness_probe(InequalityId.B10_UPPER, 1.0, "at_infinity", (100, 10, 50, 25))]
        assert ratios == sorted(ratios, reverse=True) and ratios[-1] > 1

    def test_cor_upper_at_zero(self):
        probe = tightness_probe(InequalityId.COR_UPPER, 0.5, Direction.AT_ZERO, (1e-3, 1e-1, 1e-2))
        assert [x for x, _ in probe] == [1e-1, 1e-2, 1e-3]
        assert abs(probe[-1][1] - 1) < 1e-3

    def test_b9_at_zero_not_one(self):
        probe = tightness_probe(InequalityId.B9_LOWER, 0.0, Direction.AT_ZERO, (1e-1, 1e-2, 1e-3))
        assert probe[-1][1] == pytest.approx(2 / 3, rel=1e-4)

    def test_out_of_hypothesis(self):
        with pytest.raises(HypothesisError):
            tightness_probe(InequalityId.B10_UPPER, 0.0, Direction.AT_INFINITY, (10,))

    def test_suite(self):
        assert run_tightness().ok


class TestIdentities:
    @pytest.mark.parametrize("nu,x", [(-0.25, 0.1), (1.0, 7.5), (10.0, 100.0)])
    def test_residuals(self, nu, x):
        assert recurrence_residual(nu, x) <= 1e-10
        assert derivative_residual(nu, x) <= 1e-6
        assert three_term_residual(nu, 0.0, x) <= 1e-9
        assert three_term_residual(nu, 1.0, x) <= 1e-9

    def test_suite(self):
        (res,) = run_suite("identities")
        assert res.ok, res.checks
        assert {c.name for c in res.checks} == {"recurrence", "derivative", "three_term", "closed_form", "2f3_form"}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("everything")


def test_table_suite_counts_cells():
    (res,) = run_suite("tables")
    assert res.cells_compared == 84
    assert math.isfinite(sum(m.computed for m in res.mismatches))
