import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sssp_frontier.bench.dijkstra import (
    NO_PRED,
    dijkstra,
    measure_path_geometry,
    oracle_shortest_paths,
)
from sssp_frontier.bench.fit import bench_runs, fit_cost_model, work_proxy
from sssp_frontier.bench.graph import (
    Graph,
    SplitMix64,
    derive_seed,
    format_edge_list,
    generate_graph,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from sssp_frontier.cost_models import GraphParams
from sssp_frontier.errors import (
    InsufficientData,
    InvalidParams,
    InvalidSource,
    InvalidWeightRange,
    TooDense,
)
from sssp_frontier.scenarios import DENSE, SPARSE, ScalingLaw


def triangle():
    return Graph.from_arcs(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])


def path_graph(k):
    return Graph.from_arcs(k + 1, [(i, i + 1, 1) for i in range(k)])


def random_graphs():
    return st.builds(
        lambda n, frac, seed: generate_graph(n, ScalingLaw("power", max(frac * (n - 1), 1e-9), 1), (0, 5), seed),
        st.integers(2, 60),
        st.floats(0.0, 1.0),
        st.integers(0, 2**64 - 1),
    )


class TestSplitMix64:
    def test_reference_outputs(self):
        # Published reference values for SplitMix64.
        assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
        assert SplitMix64(1234567).next_u64() == 6457827717110365317

    def test_below_in_range(self):
        rng = SplitMix64(9)
        assert all(0 <= rng.below(7) < 7 for _ in range(1000))
        with pytest.raises(ValueError):
            rng.below(0)

    def test_uniform_in_unit_interval(self):
        rng = SplitMix64(3)
        xs = [rng.uniform() for _ in range(1000)]
        assert all(0 <= x < 1 for x in xs)
        assert 0.4 < sum(xs) / len(xs) < 0.6

    def test_derive_seed_distinct(self):
        assert len({derive_seed(1, j) for j in range(100)}) == 100
        assert derive_seed(1, 0) != derive_seed(2, 0)


class TestGenerate:
    def test_too_dense(self):
        with pytest.raises(TooDense):
            generate_graph(10, SPARSE, (1, 10), 1)

    def test_exact_arc_count(self):
        g = generate_graph(100, SPARSE, (1, 10), 7)
        assert g.m == 1000
        g.validate()
        assert all(1 <= w <= 10 and isinstance(w, int) for w in g.weights)

    def test_deterministic(self):
        a = generate_graph(100, SPARSE, (1, 10), 7)
        b = generate_graph(100, SPARSE, (1, 10), 7)
        assert a.csr_bytes() == b.csr_bytes()
        assert a.csr_bytes() != generate_graph(100, SPARSE, (1, 10), 8).csr_bytes()

    def test_golden_small_graph(self):
        g = generate_graph(6, ScalingLaw("power", 1, 1), (1, 10), 42)
        assert g.offsets == [0, 0, 0, 3, 5, 5, 6]
        assert g.targets == [0, 4, 5, 1, 4, 0]
        assert g.weights == [3, 2, 8, 9, 5, 9]

    def test_dense_branch_and_complete(self):
        g = generate_graph(30, DENSE, (1, 10), 3)
        assert g.m == 9
        with pytest.raises(TooDense):
            generate_graph(12, ScalingLaw("power", 1, 2), (1, 1), 0)
        g2 = generate_graph(12, ScalingLaw("power", 120, 0), (1, 1), 0)
        assert g2.m == 120
        g2.validate()
        complete = generate_graph(12, ScalingLaw("power", 132, 0), (1, 1), 0)
        assert complete.m == 132
        complete.validate()

    def test_real_weights(self):
        g = generate_graph(50, SPARSE, (0.5, 2.5), 1)
        assert all(isinstance(w, float) and 0.5 <= w <= 2.5 for w in g.weights)

    @pytest.mark.parametrize("bad", [(-1, 3), (5, 2)])
    def test_invalid_weight_range(self, bad):
        with pytest.raises(InvalidWeightRange):
            generate_graph(20, SPARSE, bad, 1)

    def test_small_n(self):
        with pytest.raises(InvalidParams):
            generate_graph(1, SPARSE, (1, 2), 0)

    @settings(max_examples=200)
    @given(random_graphs())
    def test_simple_digraph_invariants(self, g):
        g.validate()


class TestGraph:
    def test_from_arcs_rejects(self):
        with pytest.raises(InvalidParams):
            Graph.from_arcs(3, [(0, 0, 1)])
        with pytest.raises(InvalidParams):
            Graph.from_arcs(3, [(0, 1, 1), (0, 1, 2)])
        with pytest.raises(InvalidParams):
            Graph.from_arcs(3, [(0, 3, 1)])
        with pytest.raises(InvalidParams):
            Graph.from_arcs(3, [(0, 1, -1)])

    def test_undirected(self):
        g = Graph.from_arcs(3, [(0, 1, 2), (1, 2, 3)], directed=False)
        assert g.m == 4
        assert dijkstra(g, 2).dist == [5, 3, 0]

    def test_edge_list_round_trip(self, tmp_path):
        g = generate_graph(50, SPARSE, (1, 10), 5)
        path = tmp_path / "g.txt"
        write_edge_list(g, path)
        h = read_edge_list(path)
        assert (h.n, h.offsets, h.targets, h.weights) == (g.n, g.offsets, g.targets, g.weights)
        assert format_edge_list(h) == path.read_text()
        assert path.read_text().splitlines()[0] == "50 500 1"

    def test_edge_list_real_and_undirected(self):
        g = Graph.from_arcs(4, [(0, 1, 0.1), (2, 3, 1e-17)], directed=False)
        h = parse_edge_list(format_edge_list(g))
        assert not h.directed and h.weights == g.weights and h.targets == g.targets

    @pytest.mark.parametrize("text", ["", "3 1\n0 1 1\n", "3 2 1\n0 1 1\n", "3 1 2\n0 1 1\n", "3 1 1\n0 1\n"])
    def test_bad_edge_list(self, text):
        with pytest.raises(InvalidParams):
            parse_edge_list(text)


class TestDijkstra:
    def test_triangle(self):
        run = dijkstra(triangle(), 0)
        assert run.dist == [0, 1, 2]
        assert run.path_to(2) == [0, 1, 2]
        assert run.pred[0] == NO_PRED
        assert (run.hop_length, run.weighted_length) == (2, 2)

    def test_unreachable(self):
        g = Graph.from_arcs(2, [])
        run = dijkstra(g, 0)
        assert run.dist == [0, math.inf]
        assert run.pred == [NO_PRED, NO_PRED]
        assert run.path_to(1) == []

    @pytest.mark.parametrize("s", [-1, 3, 1.0])
    def test_invalid_source(self, s):
        with pytest.raises(InvalidSource):
            dijkstra(triangle(), s)
        with pytest.raises(InvalidSource):
            oracle_shortest_paths(triangle(), s)

    def test_zero_weight_cycle(self):
        g = Graph.from_arcs(4, [(0, 1, 0), (1, 2, 0), (2, 1, 0), (2, 3, 4)])
        assert oracle_shortest_paths(g, 0) == [0, 0, 0, 4]
        assert dijkstra(g, 0).dist == [0, 0, 0, 4]

    def test_oracle_size_limit(self):
        g = Graph.from_arcs(5001, [])
        with pytest.raises(InvalidParams):
            oracle_shortest_paths(g, 0)

    @settings(max_examples=300)
    @given(random_graphs(), st.data())
    def test_matches_oracle_and_invariants(self, g, data):
        s = data.draw(st.integers(0, g.n - 1))
        run = dijkstra(g, s)
        assert run.dist == oracle_shortest_paths(g, s)
        st_ = run.stats
        assert st_.settled <= g.n
        assert st_.edge_relaxations <= g.m
        assert st_.heap_pops <= st_.heap_pushes <= g.n + st_.edge_relaxations
        assert st_.heap_pops == st_.settled + st_.stale_pops
        for u, v, w in g.arcs():
            if run.dist[u] != math.inf:
                assert run.dist[v] <= run.dist[u] + w
        for v in range(g.n):
            if run.dist[v] != math.inf:
                path = run.path_to(v)
                assert path[0] == s and path[-1] == v
                weight = sum(dict(((a, b), w) for a, b, w in g.arcs())[(a, b)] for a, b in zip(path, path[1:]))
                assert weight == pytest.approx(run.dist[v], rel=1e-9)
                assert len(path) - 1 == run.hops[v]
        assert dijkstra(g, s) == run

    def test_real_weights_against_oracle(self):
        g = generate_graph(150, SPARSE, (0.0, 1.0), 11)
        a, b = dijkstra(g, 0).dist, oracle_shortest_paths(g, 0)
        assert all(x == pytest.approx(y, rel=1e-9) for x, y in zip(a, b))


class TestGeometry:
    def test_triangle(self):
        geo = measure_path_geometry(triangle(), 0)
        assert geo.hops.max == 2 and geo.weighted.max == 2
        assert geo.reachable == 2

    @pytest.mark.parametrize("k", [1, 5, 40])
    def test_path_graph(self, k):
        geo = measure_path_geometry(path_graph(k), 0)
        assert geo.hops.max == geo.weighted.max == k
        assert geo.hops.mean == pytest.approx((k + 1) / 2)

    def test_isolated_source(self):
        geo = measure_path_geometry(Graph.from_arcs(3, [(1, 2, 1)]), 0)
        assert geo.reachable == 0 and geo.hops.max == 0

    def test_sparse_random_golden(self):
        # Recorded on n = 10^3, m = 10^4, unit weights, source 0, seeds 0..4.
        maxima = []
        for seed in range(5):
            g = generate_graph(1000, SPARSE, (1, 1), seed)
            geo = measure_path_geometry(g, 0)
            assert geo.hops.max == geo.weighted.max
            maxima.append(geo.hops.max)
        assert maxima == [4, 5, 4, 5, 5]
        assert max(maxima) <= 20

    def test_source_mismatch(self):
        g = triangle()
        with pytest.raises(InvalidSource):
            measure_path_geometry(g, 1, dijkstra(g, 0))


class TestFit:
    def test_insufficient(self):
        g = triangle()
        with pytest.raises(InsufficientData):
            fit_cost_model([(GraphParams(3, 3), dijkstra(g, 0))])

    def test_degenerate(self):
        g = generate_graph(64, SPARSE, (1, 10), 0)
        run = dijkstra(g, 0)
        report = fit_cost_model([(GraphParams(64, g.m), run)] * 6)
        assert report.degenerate and math.isnan(report.slope)

    def test_narrow_span(self):
        runs = [(p, r) for _, p, r in bench_runs([100, 120, 140, 160, 180], SPARSE, seed=1)]
        with pytest.raises(InsufficientData):
            fit_cost_model(runs)

    def test_work_proxy(self):
        run = dijkstra(triangle(), 0)
        assert work_proxy(3, run) == run.stats.heap_pops * math.log2(3) + 3

    def test_sparse_slope(self):
        runs = bench_runs([2**k for k in range(8, 13)], SPARSE, seed=2)
        report = fit_cost_model([(p, r) for _, p, r in runs])
        assert 0.9 <= report.slope <= 1.1
        assert report.r_squared >= 0.98
        assert 1.0 < report.constant < 2.0
