import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from scaledbary import experiments as ex
from scaledbary.maps import PolyMap, PowerScaled


class TestGrids:
    def test_xx(self):
        g = ex.make_grid("xx").points
        assert g.size == 10000 and g[0] == 0.0 and g[-1] == 1.0
        assert_array_equal(g, np.linspace(0, 1, 10000) ** 8)

    def test_xx_sym(self):
        g = ex.make_grid("xx-sym").points
        assert g.size == 19999
        assert_array_equal(g, -g[::-1])
        assert np.all(np.diff(g) > 0) and np.count_nonzero(g == 0) == 1

    def test_xxx(self):
        g = ex.make_grid("xxx", x0=1e-5).points
        assert g[0] == 1e-5 and g[-1] == 1.0 and g.size == 10000

    def test_x0(self):
        g = ex.make_grid("x0", delta=1e-3).points
        assert g[0] == 1e-3 and g[-1] == 1.0

    def test_bit_reproducible(self):
        assert ex.make_grid("xxx").points.tobytes() == ex.make_grid("xxx").points.tobytes()

    @pytest.mark.parametrize("kw", [dict(tag="yy"), dict(tag="xxx", x0=2.0), dict(tag="x0", delta=0.0)])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            ex.make_grid(**kw)


class TestNodeSpec:
    def test_sym_count(self):
        x, w = ex.NodeSpec(map="sym", s=2).build(40)
        assert x.size == 40 and w.size == 40

    def test_sym_odd_rejected(self):
        with pytest.raises(ValueError):
            ex.NodeSpec(map="sym").build(41)

    def test_jacobi_nodes_on_image(self):
        x, w = ex.NodeSpec(map="power-raw", s=10, T=2, weights="jacobi", gamma=10).build(30)
        assert x[0] == 0.0 and x[-1] == 2.0 and np.all(np.diff(x) > 0)

    def test_unknown_map(self):
        with pytest.raises(ValueError):
            ex.NodeSpec(map="exp")

    def test_large_poly_parameter_is_affine(self):
        y = np.linspace(-1, 1, 21)
        assert_allclose(PolyMap(a=1e10, p=2).apply(y), y, atol=1e-9)


class TestConverge:
    def test_headline_row(self):
        rows = ex.run_converge(np.abs, ex.NodeSpec(map="sym", s=2), [40], ex.make_grid("xx-sym"))
        assert 2.8e-5 <= rows[0].max_error <= 1.2e-4

    def test_log_map_final_error(self):
        grid = ex.make_grid("xxx", x0=1e-10)
        rows = ex.run_converge(np.log, ex.NodeSpec(map="log", x0=1e-10), range(10, 151, 10), grid)
        assert rows[-1].max_error <= 1e-8

    def test_constant_rows(self):
        f = ex.target_function("const")
        rows = ex.run_converge(f, ex.NodeSpec(map="power", s=5), [5, 50, 200], ex.make_grid("xx"))
        assert all(r.max_error <= 1e-14 for r in rows)

    def test_rows_sorted(self):
        rows = ex.run_converge(np.sqrt, ex.NodeSpec(map="power-raw", s=4), [30, 10, 20],
                               ex.make_grid("xx"), timing=False)
        assert [r.N for r in rows] == [10, 20, 30]
        assert all(r.wall_time == 0.0 for r in rows)

    def test_pole_flagged(self, monkeypatch):
        from scaledbary.errors import PoleError

        def boom(*args):
            raise PoleError([0.5])

        monkeypatch.setattr(ex, "max_error", boom)
        rows = ex.run_converge(np.abs, ex.NodeSpec(), [4, 6], ex.make_grid("xx"))
        assert [r.status for r in rows] == ["pole", "pole"]
        assert all(math.isnan(r.max_error) for r in rows)

    def test_record_validation(self):
        with pytest.raises(ValueError):
            ex.ConvergenceRecord(4, -1.0)
        with pytest.raises(ValueError):
            ex.ConvergenceRecord(4, float("inf"))


class TestCompare:
    def test_newman_abs_rows(self):
        rows = ex.run_compare_newman("abs", [16, 17], timing=False)
        assert [(m, r.N) for m, r in rows] == [("newman", 16), ("scaled", 16), ("newman", 17)]

    def test_newman_sqrt_scaled_wins(self):
        rows = dict(ex.run_compare_newman("sqrt", [40], timing=False))
        assert rows["scaled"].max_error < rows["newman"].max_error

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ex.run_compare_newman("cube", [4])


@pytest.fixture(scope="module")
def rows():
    return ex.run_compare_maps(1 / math.pi, 100, timing=False)


class TestCompareMaps:
    def test_power_dominates(self, rows):
        best = ex.best_by_map(rows)
        assert all(best["power"] < best[m] for m in ("poly", "tan", "sinh"))

    def test_row_count(self, rows):
        assert len(rows) == sum(len(v) for v in ex.DEFAULT_COMPARE_PARAMS.values())

    def test_override(self):
        rows = ex.run_compare_maps(0.5, 20, params={"tan": (("eps", 0.5),)}, timing=False)
        assert [r.value for r in rows if r.map == "tan"] == [0.5]

    def test_deterministic(self):
        a = ex.run_compare_maps(0.5, 20, timing=False)
        b = ex.run_compare_maps(0.5, 20, timing=False)
        assert a == b


class TestCsv:
    def test_schema_and_round_trip(self):
        recs = [ex.ConvergenceRecord(10, 1.2345678901234567e-7, 0.0),
                ex.ConvergenceRecord(20, float("nan"), 0.0, "pole")]
        text = ex.records_to_csv(recs)
        assert text.splitlines()[0] == "N,max_error,wall_time_s"
        back = ex.read_records_csv(text)
        assert back[0] == recs[0]
        assert back[1].status == "pole" and math.isnan(back[1].max_error)

    def test_round_trip_exact(self):
        v = 0.1 + 0.2
        assert float(ex.fmt(v)) == v
        assert len(ex.fmt(v).split("e")[0].replace(".", "").lstrip("-")) == 17

    def test_missing_columns(self):
        with pytest.raises(ValueError):
            ex.read_records_csv("N,err\n1,2\n")

    def test_target_functions(self):
        x = np.array([0.25])
        assert ex.target_function("pow", 0.5)(x)[0] == 0.5
        with pytest.raises(ValueError):
            ex.target_function("gamma")
