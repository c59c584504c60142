"""Fit measured Dijkstra work against the closed-form Dijkstra cost."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..cost_models import GraphParams, eval_dijkstra
from ..errors import InsufficientData
from ..scenarios import ScalingLaw
from .dijkstra import DijkstraRun, dijkstra
from .graph import derive_seed, generate_graph

MIN_RUNS = 5


def work_proxy(n: int, run: DijkstraRun) -> float:
    """Heap pops weighted by log2 n plus edge relaxations."""
    return run.stats.heap_pops * math.log2(n) + run.stats.edge_relaxations


@dataclass(frozen=True)
class FitReport:
    runs: int
    slope: float
    intercept: float
    r_squared: float
    constant: float
    degenerate: bool = False


def fit_cost_model(runs) -> FitReport:
    """Log-log regression of work proxy on the predicted Dijkstra cost.

    ``runs`` is a sequence of ``(GraphParams, DijkstraRun)``. ``constant``
    is the least-squares multiplier c in ``work ~ c * cost``. Identical
    predicted costs across all runs give a degenerate report (NaN slope)
    instead of an error.
    """
    runs = list(runs)
    if len(runs) < MIN_RUNS:
        raise InsufficientData(f"need at least {MIN_RUNS} runs, got {len(runs)}")
    cost = np.array([eval_dijkstra(p) for p, _ in runs])
    work = np.array([work_proxy(p.n, run) for p, run in runs])
    constant = float(cost @ work / (cost @ cost))
    x, y = np.log(cost), np.log(work)
    if np.ptp(x) == 0:
        return FitReport(len(runs), math.nan, math.nan, math.nan, constant, degenerate=True)
    ns = [p.n for p, _ in runs]
    if max(ns) < 10 * min(ns):
        raise InsufficientData("runs must span at least one decade of n")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return FitReport(len(runs), float(slope), float(intercept), r2, constant)


def bench_runs(sizes, density: ScalingLaw, seed: int = 0, weight_range=(1, 10), source: int = 0):
    """Generate one graph per size (per-job seeds) and run Dijkstra from ``source``."""
    out = []
    for job, n in enumerate(sizes):
        g = generate_graph(n, density, weight_range, derive_seed(seed, job))
        out.append((g, GraphParams(n, g.m), dijkstra(g, source)))
    return out
