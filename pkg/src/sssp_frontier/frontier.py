"""Winner classification, crossover search, advantage zones and the Grover barrier."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .cost_models import CLASSICAL, ModelRegistry, default_registry
from .errors import InvalidParams, InvalidRange, MissingModelKind
from .scenarios import (
    PATH_LAWS,
    POWER,
    NGrid,
    ScalingLaw,
    Scenario,
    SweepResult,
    run_sweep,
)

QUANTUM_ZONE = "quantum"
CLASSICAL_ZONE = "classical"
MARGINAL_ZONE = "marginal"

# Ratios in [low, high) count as marginal.
DEFAULT_MARGINAL_BAND = (0.8, 1.25)

QUANTUM_REFERENCE = "wesolowski"


def classify_ratio(ratio: float, band: tuple = DEFAULT_MARGINAL_BAND) -> str:
    low, high = band
    if ratio >= high:
        return QUANTUM_ZONE
    if ratio < low:
        return CLASSICAL_ZONE
    return MARGINAL_ZONE


@dataclass(frozen=True)
class WinnerRow:
    n: float
    winner: str
    best_classical: str
    best_classical_cost: float
    quantum_cost: float
    ratio: float
    classification: str


def _winner(model_ids, costs) -> str:
    # min() keeps the first of equal values, which is registry order.
    return min(model_ids, key=lambda mid: costs[mid])


def classify_costs(
    model_ids: Sequence[str],
    kinds: Sequence[str],
    costs: dict,
    n: float,
    band: tuple = DEFAULT_MARGINAL_BAND,
) -> WinnerRow:
    classical = [mid for mid, kind in zip(model_ids, kinds) if kind == CLASSICAL]
    if not classical:
        raise MissingModelKind("no classical model in the sweep")
    if QUANTUM_REFERENCE not in model_ids:
        raise MissingModelKind(f"the {QUANTUM_REFERENCE!r} model is not in the sweep")
    best = _winner(classical, costs)
    a = costs[best]
    b = costs[QUANTUM_REFERENCE]
    ratio = a / b if b > 0 else math.inf
    return WinnerRow(n, _winner(model_ids, costs), best, a, b, ratio, classify_ratio(ratio, band))


def classify_rows(sweep: SweepResult, band: tuple = DEFAULT_MARGINAL_BAND) -> list[WinnerRow]:
    return [
        classify_costs(sweep.model_ids, sweep.kinds, row.costs, row.n, band)
        for row in sweep.rows
    ]


@dataclass(frozen=True)
class CrossoverResult:
    scenario: str
    model_a: str
    model_b: str
    n_star: Optional[float]
    bracket: Optional[tuple]
    sign_below: int
    sign_above: int
    more_crossings: bool = False

    @property
    def found(self) -> bool:
        return self.n_star is not None

    @property
    def n_star_int(self) -> Optional[int]:
        return None if self.n_star is None else int(round(self.n_star))


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def _log_gap(scenario: Scenario, model_a, model_b) -> Callable[[float], float]:
    def gap(n: float) -> float:
        p = scenario.params(n)
        a, b = model_a(p), model_b(p)
        if a == b:
            return 0.0
        if a <= 0 or b <= 0:
            return a - b
        return math.log(a) - math.log(b)

    return gap


def _check_range(n_range) -> tuple[float, float]:
    lo, hi = (float(x) for x in n_range)
    if not (2 <= lo < hi <= 1e12):
        raise InvalidRange(f"n range must satisfy 2 <= lo < hi <= 1e12, got [{lo}, {hi}]")
    return lo, hi


def log_probes(lo: float, hi: float, count: int) -> list[float]:
    a, b = math.log(lo), math.log(hi)
    return [math.exp(a + (b - a) * i / (count - 1)) for i in range(count)]


def find_crossover(
    scenario: Scenario,
    model_a: str,
    model_b: str,
    n_range=(1e2, 1e8),
    registry: Optional[ModelRegistry] = None,
    probes: int = 512,
    rtol: float = 1e-6,
) -> CrossoverResult:
    """Smallest n in ``n_range`` where ``model_a`` and ``model_b`` cost the same.

    Scans log-spaced probes for a sign change of log(cost_a) - log(cost_b)
    and bisects in log n. ``rtol`` bounds the relative width of the final
    bracket; bisection continues until the log gap is below 1e-6 as well.
    """
    registry = registry if registry is not None else default_registry()
    lo, hi = _check_range(n_range)
    gap = _log_gap(scenario, registry.get(model_a), registry.get(model_b))

    xs = log_probes(lo, hi, probes)
    signed = [(x, _sign(gap(x))) for x in xs]
    nonzero = [(x, s) for x, s in signed if s != 0]
    changes = []
    for (x0, s0), (x1, s1) in zip(nonzero, nonzero[1:]):
        if s0 != s1:
            changes.append((x0, x1, s0, s1))
    if not changes:
        s = nonzero[0][1] if nonzero else 0
        return CrossoverResult(scenario.name, model_a, model_b, None, None, s, s)

    x0, x1, s0, s1 = changes[0]
    more = len(changes) > 1
    exact = [x for x, s in signed if s == 0 and x0 < x < x1]
    if exact:
        return CrossoverResult(scenario.name, model_a, model_b, exact[0], (x0, x1), s0, s1, more)

    a, b = math.log(x0), math.log(x1)
    for _ in range(200):
        mid = 0.5 * (a + b)
        g = gap(math.exp(mid))
        if math.expm1(b - a) <= rtol and abs(g) <= 1e-6:
            break
        s = _sign(g)
        if s == 0:
            break
        if s == s0:
            a = mid
        else:
            b = mid
    n_star = math.exp(mid)
    return CrossoverResult(
        scenario.name, model_a, model_b, n_star, (math.exp(a), math.exp(b)), s0, s1, more
    )


# Density laws for the zone map pass through a common pivot, so alpha = 1
# gives m = 10 n and alpha = 2 gives m = n^2 / 100.
ZONE_PIVOT_N = 1e3
ZONE_PIVOT_M = 1e4


def pivot_density_law(alpha: float) -> ScalingLaw:
    """Power law m = M0 * (n / N0)**alpha through the pivot (N0, M0)."""
    return ScalingLaw(POWER, ZONE_PIVOT_M / ZONE_PIVOT_N**alpha, alpha)


@dataclass(frozen=True)
class ZoneCell:
    alpha: float
    path_label: str
    density: ScalingLaw
    path: ScalingLaw
    winner: str
    ratio: float
    classification: str


@dataclass(frozen=True)
class ZoneMap:
    reference_n: float
    alphas: tuple
    path_labels: tuple
    cells: tuple

    def cell(self, alpha: float, path_label: str) -> ZoneCell:
        for c in self.cells:
            if c.path_label == path_label and math.isclose(c.alpha, alpha, rel_tol=1e-12):
                return c
        raise KeyError((alpha, path_label))


def alpha_range(lo: float, hi: float, count: int) -> list[float]:
    if count < 1:
        raise InvalidParams("exponent grid must be non-empty")
    if count == 1:
        return [float(lo)]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def map_zones(
    density_exponents: Sequence[float],
    path_laws,
    reference_n: float,
    registry: Optional[ModelRegistry] = None,
    band: tuple = DEFAULT_MARGINAL_BAND,
    density_law: Callable[[float], ScalingLaw] = pivot_density_law,
) -> ZoneMap:
    """Classify every (density exponent, path law) cell at ``reference_n``.

    ``path_laws`` is a mapping label -> ScalingLaw or a sequence of labels
    from the built-in set (``short``, ``long``). Cells are row-major over
    the exponents.
    """
    registry = registry if registry is not None else default_registry()
    if reference_n < 2:
        raise InvalidParams(f"reference_n must be >= 2, got {reference_n}")
    alphas = [float(a) for a in density_exponents]
    if not alphas:
        raise InvalidParams("exponent grid must be non-empty")
    if not hasattr(path_laws, "items"):
        try:
            path_laws = {label: PATH_LAWS[label] for label in path_laws}
        except KeyError as exc:
            raise InvalidParams(f"unknown path law {exc.args[0]!r}") from None
    if not path_laws:
        raise InvalidParams("path law list must be non-empty")
    ids = registry.ids()
    kinds = [m.kind for m in registry]
    cells = []
    for alpha in alphas:
        density = density_law(alpha)
        for label, path in path_laws.items():
            scenario = Scenario(f"alpha={alpha:g}/{label}", density, path)
            costs = registry.evaluate_all(scenario.params(reference_n))
            row = classify_costs(ids, kinds, costs, reference_n, band)
            cells.append(
                ZoneCell(alpha, label, density, path, row.winner, row.ratio, row.classification)
            )
    return ZoneMap(reference_n, tuple(alphas), tuple(path_laws), tuple(cells))


@dataclass(frozen=True)
class BarrierSeries:
    scenario: str
    ns: tuple
    ratios: tuple
    strictly_increasing: bool


def ratio_series(
    scenario: Scenario,
    grid,
    numerator: str,
    denominator: str,
    registry: Optional[ModelRegistry] = None,
) -> BarrierSeries:
    registry = registry if registry is not None else default_registry()
    num, den = registry.get(numerator), registry.get(denominator)
    ns = grid.values() if isinstance(grid, NGrid) else sorted(grid)
    if not ns:
        raise InvalidRange("empty grid")
    ratios = []
    for n in ns:
        p = scenario.params(n)
        ratios.append(num(p) / den(p))
    increasing = len(ratios) > 1 and all(b > a for a, b in zip(ratios, ratios[1:]))
    return BarrierSeries(scenario.name, tuple(ns), tuple(ratios), increasing)


def grover_barrier_check(
    scenario: Scenario,
    n_range,
    registry: Optional[ModelRegistry] = None,
) -> BarrierSeries:
    """Grover-over-Dijkstra cost ratio along ``n_range``.

    ``n_range`` is an ``NGrid``, an explicit list of n values, or a
    ``(lo, hi)`` pair expanded to 25 log-spaced points per decade. A strictly
    increasing series is the divergence signal.
    """
    if isinstance(n_range, tuple) and len(n_range) == 2:
        lo, hi = n_range
        if not (2 <= lo < hi):
            raise InvalidRange(f"invalid n range {n_range}")
        n_range = NGrid(int(lo), int(hi), 25, ())
    return ratio_series(scenario, n_range, "grover", "dijkstra", registry)


def sweep_and_classify(scenario: Scenario, grid, registry=None, band=DEFAULT_MARGINAL_BAND):
    sweep = run_sweep(scenario, grid, registry)
    return sweep, classify_rows(sweep, band)
