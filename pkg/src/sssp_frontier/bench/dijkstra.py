"""Instrumented Dijkstra, a Bellman-Ford oracle and path-geometry statistics."""

from __future__ import annotations

import heapq
import math
import statistics
from dataclasses import dataclass, field

from ..errors import InvalidParams, InvalidSource
from .graph import Graph

NO_PRED = -1
ORACLE_MAX_N = 5000


@dataclass
class RunStats:
    heap_pushes: int = 0
    heap_pops: int = 0
    settled: int = 0
    stale_pops: int = 0
    edge_relaxations: int = 0


@dataclass
class DijkstraRun:
    """Result of one run.

    ``pred[v]`` is ``NO_PRED`` for the source and unreachable vertices.
    ``hops[v]`` counts arcs on the shortest-path-tree path to ``v`` (-1 when
    unreachable). ``weighted_length`` is the largest finite distance and
    ``hop_length`` the hop count of the vertex attaining it.
    """

    source: int
    dist: list
    pred: list
    hops: list
    stats: RunStats = field(default_factory=RunStats)
    hop_length: int = 0
    weighted_length: float = 0

    def path_to(self, v: int) -> list:
        if math.isinf(self.dist[v]):
            return []
        path = [v]
        while path[-1] != self.source:
            path.append(self.pred[path[-1]])
            if len(path) > len(self.dist):
                raise RuntimeError("predecessor chain does not reach the source")
        path.reverse()
        return path


def _check_source(g: Graph, s: int) -> None:
    if not (isinstance(s, int) and 0 <= s < g.n):
        raise InvalidSource(f"source {s!r} not in [0, {g.n})")


def dijkstra(g: Graph, s: int) -> DijkstraRun:
    """Binary-heap Dijkstra with lazy deletion.

    Stale heap entries are skipped on pop. Only arcs out of settled
    vertices are relaxed, so ``edge_relaxations <= m``.
    """
    _check_source(g, s)
    n = g.n
    offsets, targets, weights = g.offsets, g.targets, g.weights
    dist = [math.inf] * n
    pred = [NO_PRED] * n
    hops = [-1] * n
    done = [False] * n
    stats = RunStats()

    dist[s] = 0
    hops[s] = 0
    heap = [(0, s)]
    stats.heap_pushes = 1
    pushes = pops = settled = relax = 0
    while heap:
        d, u = heapq.heappop(heap)
        pops += 1
        if done[u]:
            continue
        done[u] = True
        settled += 1
        hu = hops[u] + 1
        for k in range(offsets[u], offsets[u + 1]):
            v = targets[k]
            relax += 1
            nd = d + weights[k]
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                hops[v] = hu
                heapq.heappush(heap, (nd, v))
                pushes += 1

    stats.heap_pushes += pushes
    stats.heap_pops = pops
    stats.settled = settled
    stats.stale_pops = pops - settled
    stats.edge_relaxations = relax

    far = s
    for v in range(n):
        if dist[v] != math.inf and dist[v] > dist[far]:
            far = v
    return DijkstraRun(s, dist, pred, hops, stats, hops[far], dist[far])


def oracle_shortest_paths(g: Graph, s: int) -> list:
    """Bellman-Ford relaxation over all arcs, at most n - 1 rounds."""
    _check_source(g, s)
    if g.n > ORACLE_MAX_N:
        raise InvalidParams(f"oracle is limited to n <= {ORACLE_MAX_N}")
    arcs = list(g.arcs())
    dist = [math.inf] * g.n
    dist[s] = 0
    for _ in range(g.n - 1):
        changed = False
        for u, v, w in arcs:
            du = dist[u]
            if du + w < dist[v]:
                dist[v] = du + w
                changed = True
        if not changed:
            break
    return dist


@dataclass(frozen=True)
class LengthSummary:
    max: float
    mean: float
    median: float


@dataclass(frozen=True)
class PathGeometry:
    """Hop and weighted shortest-path lengths over vertices reachable from the source.

    The source itself is excluded; with nothing reachable all fields are 0.
    """

    source: int
    reachable: int
    hops: LengthSummary
    weighted: LengthSummary


def _summarize(values) -> LengthSummary:
    if not values:
        return LengthSummary(0, 0.0, 0)
    return LengthSummary(max(values), statistics.fmean(values), statistics.median(values))


def measure_path_geometry(g: Graph, s: int, run: DijkstraRun | None = None) -> PathGeometry:
    run = run if run is not None else dijkstra(g, s)
    if run.source != s:
        raise InvalidSource("run was computed from a different source")
    others = [v for v in range(g.n) if v != s and not math.isinf(run.dist[v])]
    return PathGeometry(
        s,
        len(others),
        _summarize([run.hops[v] for v in others]),
        _summarize([run.dist[v] for v in others]),
    )
