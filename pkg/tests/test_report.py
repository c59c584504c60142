import json
import math

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sssp_frontier import report as report_mod
from sssp_frontier.bench.fit import FitReport
from sssp_frontier.report import (
    ReportBundle,
    Table,
    atomic_write,
    cost_table,
    fit_record,
    make_metadata,
    ratio_table,
    report_schema,
    round_sig,
    sweep_table,
    write_bundle,
)
from sssp_frontier.scenarios import NGrid, builtin_scenarios, run_sweep

finite = st.floats(allow_nan=False, allow_infinity=False)
cells = st.one_of(
    finite,
    st.integers(-(2**63), 2**63),
    st.booleans(),
    st.none(),
    st.text(alphabet=st.characters(blacklist_categories=("Cs",)), min_size=1).filter(
        lambda s: report_mod._parse_cell(s) == s
    ),
)


@st.composite
def tables(draw, cell=cells):
    width = draw(st.integers(1, 5))
    columns = [f"c{i}" for i in range(width)]
    rows = draw(st.lists(st.lists(cell, min_size=width, max_size=width), max_size=8))
    return Table("t", columns, rows)


class TestRoundSig:
    @pytest.mark.parametrize("x, d, out", [(216242.3, 3, 216000.0), (0.0975439, 2, 0.098), (0, 3, 0), (-1.6e-7, 1, -2e-7)])
    def test_values(self, x, d, out):
        assert round_sig(x, d) == out


class TestTables:
    def test_sweep_table_layout(self):
        sweep = run_sweep(builtin_scenarios()[0], NGrid(10**4, 10**8, 25))
        t = sweep_table(sweep)
        assert t.columns == ["n", "dijkstra", "duan", "grover", "wesolowski"]
        assert len(t.rows) == 101
        assert t.column("n") == sorted(t.column("n"))

    def test_cost_table_shapes(self):
        t = cost_table("exact")
        assert len(t.rows) == 6
        assert t.column("winner") == ["wesolowski"] * 3 + ["dijkstra"] * 3
        assert ratio_table("calibrated").column("n")[-1] == 9772

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            cost_table("fine")

    @given(tables(cell=st.one_of(finite, st.integers(-(2**63), 2**63), st.booleans(), st.none(), st.sampled_from(["dijkstra", "sparse-short", "a,b", 'q"x']))))
    def test_csv_round_trip(self, t):
        back = Table.from_csv("t", t.to_csv())
        assert back.columns == t.columns
        assert back.rows == t.rows
        for a, b in zip(back.rows, t.rows):
            assert [type(x) for x in a] == [type(x) for x in b]

    @given(tables())
    def test_json_round_trip(self, t):
        bundle = ReportBundle(make_metadata("sweep"), figures={"t": t})
        back = ReportBundle.from_json(bundle.to_json())
        assert back == bundle
        assert back.to_json() == bundle.to_json()

    @given(st.lists(st.floats(min_value=1e-300, max_value=1e300), min_size=1, max_size=50))
    def test_sweep_csv_is_lossless(self, xs):
        t = Table("s", ["n", "cost"], [[i, x] for i, x in enumerate(xs)])
        assert Table.from_csv("s", t.to_csv()).rows == t.rows

    def test_six_significant_digits(self):
        t = Table("t", ["x"], [[232877.1237954944]])
        assert t.to_csv(6) == "x\n232877\n"


class TestBundle:
    def full_bundle(self):
        b = ReportBundle(make_metadata("reproduce-tables", grid_mode="exact", seed=3))
        b.tables["table1"] = cost_table()
        b.tables["table2"] = ratio_table()
        b.figures["sweep_dense-long"] = sweep_table(run_sweep(builtin_scenarios()[3], [100, 1000]))
        b.fits.append(fit_record(FitReport(6, math.nan, math.nan, math.nan, 1.2, True)))
        return b

    def test_schema(self):
        b = self.full_bundle()
        jsonschema.validate(json.loads(b.to_json()), report_schema())
        assert b.fits[0]["slope"] is None

    def test_schema_rejects_garbage(self):
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate({"metadata": {}}, report_schema())

    def test_write_bundle(self, tmp_path):
        b = self.full_bundle()
        written = write_bundle(b, tmp_path, "both", stem="r")
        names = sorted(p.name for p in written)
        assert names == ["r.json", "sweep_dense-long.csv", "table1.csv", "table2.csv"]
        assert ReportBundle.from_json((tmp_path / "r.json").read_text()) == b
        assert not list(tmp_path.glob(".*tmp"))

    def test_write_formats(self, tmp_path):
        b = self.full_bundle()
        assert [p.suffix for p in write_bundle(b, tmp_path / "a", "json")] == [".json"]
        assert {p.suffix for p in write_bundle(b, tmp_path / "b", "csv")} == {".csv"}


class TestAtomicWrite:
    def test_failure_leaves_nothing(self, tmp_path, monkeypatch):
        def boom(src, dst):
            raise OSError("disk full")

        monkeypatch.setattr(report_mod.os, "replace", boom)
        with pytest.raises(OSError):
            atomic_write(tmp_path / "x.csv", "data")
        assert list(tmp_path.iterdir()) == []

    def test_overwrites(self, tmp_path):
        target = tmp_path / "x.csv"
        atomic_write(target, "one")
        atomic_write(target, "two")
        assert target.read_text() == "two"
