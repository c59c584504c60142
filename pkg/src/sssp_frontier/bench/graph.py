"""CSR digraphs, a seeded generator and the plain-text edge-list format."""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from ..errors import InvalidParams, InvalidWeightRange, TooDense
from ..scenarios import ScalingLaw

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood 2014).

    Chosen because the full algorithm is six lines of 64-bit integer
    arithmetic, so other implementations can reproduce generated graphs
    bit for bit.
    """

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection, so there is no modulo bias."""
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def uniform(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def derive_seed(seed: int, job: int) -> int:
    """Independent per-job seed: one SplitMix64 output keyed by (seed, job)."""
    return SplitMix64((seed ^ ((job * 0xD1B54A32D192ED03) & MASK64)) & MASK64).next_u64()


@dataclass
class Graph:
    """Weighted digraph in compressed sparse row form.

    Arcs out of ``u`` are ``targets[offsets[u]:offsets[u+1]]``, sorted by
    target. An undirected graph stores each edge as two arcs.
    """

    n: int
    offsets: list
    targets: list
    weights: list
    directed: bool = True
    seed: Optional[int] = None

    @property
    def m(self) -> int:
        return len(self.targets)

    def out_arcs(self, u: int):
        lo, hi = self.offsets[u], self.offsets[u + 1]
        return zip(self.targets[lo:hi], self.weights[lo:hi])

    def arcs(self):
        """Yield ``(u, v, w)`` for every stored arc in CSR order."""
        for u in range(self.n):
            for k in range(self.offsets[u], self.offsets[u + 1]):
                yield u, self.targets[k], self.weights[k]

    def csr_bytes(self) -> bytes:
        """Canonical byte image of the CSR arrays, for determinism checks."""
        w_type = "q" if all(isinstance(w, int) for w in self.weights) else "d"
        return (
            array("q", self.offsets).tobytes()
            + array("q", self.targets).tobytes()
            + array(w_type, self.weights).tobytes()
        )

    def validate(self) -> None:
        if len(self.offsets) != self.n + 1 or self.offsets[0] != 0 or self.offsets[-1] != self.m:
            raise InvalidParams("malformed CSR offsets")
        if len(self.weights) != self.m:
            raise InvalidParams("weights and targets differ in length")
        for u in range(self.n):
            lo, hi = self.offsets[u], self.offsets[u + 1]
            if hi < lo:
                raise InvalidParams("offsets must be non-decreasing")
            prev = -1
            for k in range(lo, hi):
                v = self.targets[k]
                if not 0 <= v < self.n:
                    raise InvalidParams(f"target {v} out of range")
                if v == u:
                    raise InvalidParams(f"self-loop at {u}")
                if v <= prev:
                    raise InvalidParams(f"duplicate or unsorted arc {u}->{v}")
                prev = v
                if self.weights[k] < 0:
                    raise InvalidParams(f"negative weight on {u}->{v}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable, directed: bool = True, seed=None) -> "Graph":
        """Build from ``(u, v, w)`` triples; for undirected graphs add both directions."""
        if n < 1:
            raise InvalidParams("graph needs at least one vertex")
        table = {}
        for u, v, w in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParams(f"arc {u}->{v} out of range for n={n}")
            if u == v:
                raise InvalidParams(f"self-loop at {u}")
            if w < 0:
                raise InvalidParams(f"negative weight on {u}->{v}")
            pairs = [(u, v)] if directed else [(u, v), (v, u)]
            for key in pairs:
                if key in table:
                    raise InvalidParams(f"duplicate arc {key[0]}->{key[1]}")
                table[key] = w
        offsets = [0] * (n + 1)
        for u, _ in table:
            offsets[u + 1] += 1
        for u in range(n):
            offsets[u + 1] += offsets[u]
        ordered = sorted(table)
        return cls(
            n,
            offsets,
            [v for _, v in ordered],
            [table[key] for key in ordered],
            directed,
            seed,
        )


def generate_graph(
    n: int,
    density: ScalingLaw,
    weight_range=(1, 10),
    seed: int = 0,
) -> Graph:
    """Uniform random simple digraph with exactly ``round(density(n))`` arcs.

    Arcs are drawn as indices into the n*(n-1) possible ordered pairs using
    SplitMix64 seeded with ``seed``; repeats are rejected. Each accepted arc
    immediately draws its weight: an integer in [lo, hi] when both bounds
    are ints, otherwise a float lo + (hi - lo) * u. Above half capacity the
    excluded arcs are drawn instead and weights are assigned in (u, v) order.
    """
    if n < 2:
        raise InvalidParams(f"n must be >= 2, got {n}")
    lo, hi = weight_range
    if lo < 0 or hi < lo:
        raise InvalidWeightRange(f"weight range must satisfy 0 <= lo <= hi, got {weight_range}")
    integral = isinstance(lo, int) and isinstance(hi, int)
    m = int(round(density(n)))
    capacity = n * (n - 1)
    if m > capacity:
        raise TooDense(f"{m} arcs do not fit in a simple digraph on {n} vertices")
    if m < 0:
        raise InvalidParams(f"arc count must be non-negative, got {m}")

    rng = SplitMix64(seed)

    def draw_weight():
        if integral:
            return lo + rng.below(hi - lo + 1)
        return lo + (hi - lo) * rng.uniform()

    def pair(index):
        u, r = divmod(index, n - 1)
        return u, (r if r < u else r + 1)

    arcs = {}
    if 2 * m <= capacity:
        while len(arcs) < m:
            key = pair(rng.below(capacity))
            if key not in arcs:
                arcs[key] = draw_weight()
    else:
        excluded = set()
        while len(excluded) < capacity - m:
            excluded.add(rng.below(capacity))
        for index in range(capacity):
            if index not in excluded:
                arcs[pair(index)] = draw_weight()
    return Graph.from_arcs(n, ((u, v, w) for (u, v), w in arcs.items()), True, seed)


def format_edge_list(g: Graph) -> str:
    """Header ``n m directed`` then one ``u v w`` line per edge.

    Undirected graphs list each edge once with u < v, and m counts edges.
    """
    if g.directed:
        edges = list(g.arcs())
    else:
        edges = [(u, v, w) for u, v, w in g.arcs() if u < v]
    lines = [f"{g.n} {len(edges)} {1 if g.directed else 0}"]
    lines.extend(f"{u} {v} {w!r}" for u, v, w in edges)
    return "\n".join(lines) + "\n"


def _parse_weight(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 3:
        raise InvalidParams("edge list must start with a 'n m directed' header")
    n, m, directed = (int(x) for x in rows[0])
    if directed not in (0, 1):
        raise InvalidParams("directed flag must be 0 or 1")
    body = rows[1:]
    if len(body) != m:
        raise InvalidParams(f"header announces {m} edges, found {len(body)}")
    arcs = []
    for fields_ in body:
        if len(fields_) != 3:
            raise InvalidParams(f"bad edge line {' '.join(fields_)!r}")
        arcs.append((int(fields_[0]), int(fields_[1]), _parse_weight(fields_[2])))
    return Graph.from_arcs(n, arcs, bool(directed))


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g))


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())
