"""Table/figure assembly and lossless CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cost_models import ModelRegistry, default_registry
from .frontier import (
    CrossoverResult,
    ZoneMap,
    classify_costs,
    classify_rows,
)
from .scenarios import (
    DECADE_ANCHORS,
    Scenario,
    SweepResult,
    calibrated_n,
    get_scenario,
    run_sweep,
)

EXACT = "exact"
CALIBRATED = "calibrated"
GRID_MODES = (EXACT, CALIBRATED)

TABLE_DIGITS = 6


def round_sig(x: float, digits: int) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits - 1}e}")


@dataclass
class Table:
    name: str
    columns: list
    rows: list = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_csv(self, digits: Optional[int] = None) -> str:
        """CSV text; floats use ``digits`` significant digits or shortest round-trip repr."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_format_cell(v, digits) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, name: str, text: str) -> "Table":
        reader = csv.reader(io.StringIO(text))
        columns = next(reader)
        return cls(name, columns, [[_parse_cell(v) for v in row] for row in reader])

    def to_dict(self) -> dict:
        return {"name": self.name, "columns": list(self.columns), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> "Table":
        return cls(d["name"], list(d["columns"]), [list(r) for r in d["rows"]])


def _format_cell(value, digits):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if digits is not None:
            return f"{value:.{digits}g}"
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _parse_cell(text: str):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def sweep_table(sweep: SweepResult) -> Table:
    """Plot-ready series: n followed by one cost column per model in registry order."""
    rows = [[row.n] + [row.costs[mid] for mid in sweep.model_ids] for row in sweep.rows]
    return Table(f"sweep_{sweep.scenario}", ["n"] + list(sweep.model_ids), rows)


def sweep_detail_table(sweep: SweepResult, band=None) -> Table:
    """Sweep rows with m, l, winner, best-classical/quantum ratio and classification."""
    kwargs = {} if band is None else {"band": band}
    winners = classify_rows(sweep, **kwargs)
    rows = []
    for row, w in zip(sweep.rows, winners):
        rows.append(
            [row.n, row.m, row.l]
            + [row.costs[mid] for mid in sweep.model_ids]
            + [w.winner, w.ratio, w.classification]
        )
    columns = ["n", "m", "l"] + list(sweep.model_ids) + ["winner", "ratio", "classification"]
    return Table(f"detail_{sweep.scenario}", columns, rows)


def sample_points(scenario: Scenario, mode: str, decades=DECADE_ANCHORS) -> list[int]:
    if mode == EXACT:
        return list(decades)
    if mode == CALIBRATED:
        return [calibrated_n(scenario, d) for d in decades]
    raise ValueError(f"grid mode must be one of {GRID_MODES}, got {mode!r}")


TABLE1_SCENARIOS = ("sparse-short", "sparse-long")
TABLE2_LAYOUT = (
    ("sparse-short", (10**4, 10**6, 10**8)),
    ("sparse-long", (10**4, 10**6)),
    ("dense-short", (10**4,)),
    ("dense-long", (10**4,)),
)


def cost_table(mode: str = EXACT, registry: Optional[ModelRegistry] = None) -> Table:
    """Per-model costs and winner on the sparse scenarios at 10^4, 10^6, 10^8."""
    registry = registry if registry is not None else default_registry()
    ids = registry.ids()
    table = Table("table1", ["scenario", "decade", "n"] + ids + ["winner"])
    for name in TABLE1_SCENARIOS:
        scenario = get_scenario(name)
        points = sample_points(scenario, mode)
        sweep = run_sweep(scenario, points, registry)
        for decade, row, w in zip(DECADE_ANCHORS, sweep.rows, classify_rows(sweep)):
            table.rows.append([name, decade, row.n] + [row.costs[i] for i in ids] + [w.winner])
    return table


def ratio_table(mode: str = EXACT, registry: Optional[ModelRegistry] = None) -> Table:
    """Best-classical over quantum-walk cost ratios for the seven published cells.

    ``ratio_3sf`` divides the two costs after rounding each to three
    significant figures, the convention of a table that prints rounded costs
    and derives ratios from them.
    """
    registry = registry if registry is not None else default_registry()
    ids = registry.ids()
    kinds = [m.kind for m in registry]
    table = Table(
        "table2",
        [
            "scenario", "decade", "n", "best_classical", "best_classical_cost",
            "quantum_cost", "ratio", "ratio_3sf", "classification",
        ],
    )
    for name, decades in TABLE2_LAYOUT:
        scenario = get_scenario(name)
        for decade, n in zip(decades, sample_points(scenario, mode, decades)):
            costs = registry.evaluate_all(scenario.params(n))
            w = classify_costs(ids, kinds, costs, n)
            r3 = round_sig(w.best_classical_cost, 3) / round_sig(w.quantum_cost, 3)
            table.rows.append(
                [name, decade, n, w.best_classical, w.best_classical_cost,
                 w.quantum_cost, w.ratio, r3, w.classification]
            )
    return table


def zone_table(zmap: ZoneMap) -> Table:
    rows = [
        [c.alpha, c.path_label, c.density.coefficient, c.path.kind, c.path.coefficient,
         c.path.exponent, c.winner, c.ratio, c.classification]
        for c in zmap.cells
    ]
    return Table(
        "zones",
        ["alpha", "path", "density_coefficient", "path_kind", "path_coefficient",
         "path_exponent", "winner", "ratio", "classification"],
        rows,
    )


def crossover_table(results: Sequence[CrossoverResult]) -> Table:
    rows = []
    for r in results:
        lo, hi = r.bracket if r.bracket else (None, None)
        rows.append(
            [r.scenario, r.model_a, r.model_b, r.n_star, r.n_star_int, lo, hi,
             r.sign_below, r.sign_above, r.more_crossings]
        )
    return Table(
        "crossovers",
        ["scenario", "model_a", "model_b", "n_star", "n_star_int", "bracket_lo",
         "bracket_hi", "sign_below", "sign_above", "more_crossings"],
        rows,
    )


@dataclass
class ReportBundle:
    metadata: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    figures: dict = field(default_factory=dict)
    zone_maps: dict = field(default_factory=dict)
    crossovers: dict = field(default_factory=dict)
    fits: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def tables(d):
            return {k: v.to_dict() for k, v in d.items()}

        return {
            "metadata": dict(self.metadata),
            "tables": tables(self.tables),
            "figures": tables(self.figures),
            "zone_maps": tables(self.zone_maps),
            "crossovers": tables(self.crossovers),
            "fits": [dict(f) for f in self.fits],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportBundle":
        def tables(section):
            return {k: Table.from_dict(v) for k, v in d.get(section, {}).items()}

        return cls(
            dict(d.get("metadata", {})),
            tables("tables"),
            tables("figures"),
            tables("zone_maps"),
            tables("crossovers"),
            [dict(f) for f in d.get("fits", [])],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportBundle":
        return cls.from_dict(json.loads(text))

    def all_tables(self):
        for section in (self.tables, self.figures, self.zone_maps, self.crossovers):
            yield from section.values()


def make_metadata(command: str, grid_mode: Optional[str] = None, seed: Optional[int] = None, **extra) -> dict:
    meta = {"tool": "sssp-frontier", "version": __version__, "command": command}
    if grid_mode is not None:
        meta["grid_mode"] = grid_mode
    if seed is not None:
        meta["seed"] = seed
    meta.update(extra)
    return meta


def fit_record(report, **extra) -> dict:
    rec = asdict(report)
    for key, value in rec.items():
        if isinstance(value, float) and not math.isfinite(value):
            rec[key] = None
    rec.update(extra)
    return rec


def report_schema() -> dict:
    text = resources.files("sssp_frontier").joinpath("report.schema.json").read_text()
    return json.loads(text)


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the same directory and rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def write_bundle(bundle: ReportBundle, out_dir, fmt: str = "both", stem: str = "report") -> list[Path]:
    """Serialize every table as CSV and/or the whole bundle as JSON.

    Published tables use six significant digits; figure series, zone maps
    and crossovers keep full precision. Everything is rendered before the
    first file is written.
    """
    out_dir = Path(out_dir)
    files = {}
    if fmt in ("csv", "both"):
        for t in bundle.tables.values():
            files[f"{t.name}.csv"] = t.to_csv(TABLE_DIGITS)
        for section in (bundle.figures, bundle.zone_maps, bundle.crossovers):
            for t in section.values():
                files[f"{t.name}.csv"] = t.to_csv()
    if fmt in ("json", "both"):
        files[f"{stem}.json"] = bundle.to_json()
    written = []
    for name, text in files.items():
        atomic_write(out_dir / name, text)
        written.append(out_dir / name)
    return written
