#!/usr/bin/env python
"""
test_pst_builder.py - Unit Tests for Network Construction and p-PST Certification

Tests cover:
- Diameter upper bound (randomized diameter lemma) and exact PST number search
- Procedure 1 (iterated gluing) and Procedure 2 (common neighbours, distance growth)
- Network certification verdicts and report rows
"""

import math

import numpy as np
import pytest
from pathlib import Path
import sys

# Add project to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from pst_network.pst_builder import (
    BoundSource,
    certify_network,
    ppst_exact,
    ppst_upper_bound,
    procedure1,
    procedure2,
)
from pst_network.pst_errors import Disconnected, InstanceTooLarge, InvalidVertex, SearchExhausted
from pst_network.pst_engineering import GadgetKind, TokenState, simulate_schedule
from pst_network.pst_graph import cycle_graph, metrics, path_graph
from pst_network.pst_io import load_graph
from pst_network.pst_spectral import find_pst_time
from pst_network.pst_violations import ViolationsCollector


@pytest.mark.unit
class TestPstNumber:
    """Test p-PST bounds for a single pair"""

    def test_upper_bound_on_path(self, fixture_path, data):
        """ℓ = 5: two P3 hops and one K2 hop"""
        g, _ = load_graph(fixture_path("path6.json"))

        certificate = ppst_upper_bound(g, 0, 5)
        kinds = [rnd.gadgets[0].kind for rnd in certificate.schedule.rounds]

        assert certificate.p == 3
        assert certificate.source is BoundSource.DIAMETER_LEMMA
        assert kinds == [GadgetKind.P3, GadgetKind.P3, GadgetKind.K2]
        assert certificate.total_time == pytest.approx(2 * data.PI_OVER_SQRT2 + data.HALF_PI)

    def test_exact_on_path(self, fixture_path):
        g, _ = load_graph(fixture_path("path6.json"))

        certificate = ppst_exact(g, 0, 5)

        assert certificate.p == 3
        assert certificate.source is BoundSource.SEARCH

    def test_exact_uses_cube_antipodes(self):
        """One Q3 round covers an antipodal pair"""
        from pst_network.pst_graph import cube_graph

        certificate = ppst_exact(cube_graph(), 0, 7)

        assert certificate.p == 1
        assert certificate.schedule.rounds[0].gadgets[0].kind is GadgetKind.Q3

    def test_schedule_is_a_witness(self, rng, test_data_generator):
        """Certificate schedules carry the token from u to v"""
        for _ in range(5):
            g = test_data_generator.random_connected_graph(rng, 8, extra_edges=3)
            certificate = ppst_exact(g, 0, 7)

            trace = simulate_schedule(g, certificate.schedule, [TokenState("t", 0)])

            assert trace.final_positions() == {"t": 7}

    def test_exact_never_exceeds_upper_bound(self, rng, test_data_generator):
        for _ in range(10):
            g = test_data_generator.random_connected_graph(rng, int(rng.integers(3, 10)))
            u, v = 0, g.vertex_count - 1

            assert ppst_exact(g, u, v).p <= ppst_upper_bound(g, u, v).p

    @pytest.mark.slow
    def test_diameter_lemma_on_random_graphs(self, rng, test_data_generator):
        """p = ⌈ℓ/2⌉ with a working witness; the exact search never does worse"""
        for _ in range(100):
            n = int(rng.integers(2, 13))
            g = test_data_generator.random_connected_graph(rng, n, extra_edges=int(rng.integers(0, 4)))
            u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
            m = metrics(g)

            certificate = ppst_upper_bound(g, u, v)
            trace = simulate_schedule(g, certificate.schedule, [TokenState("t", u)])

            assert certificate.p == math.ceil(m.distance(u, v) / 2)
            assert certificate.p <= math.ceil(m.diameter / 2)
            assert trace.final_positions() == {"t": v}
            assert ppst_exact(g, u, v).p <= certificate.p

    def test_disconnected_pair(self, fixture_path):
        g, _ = load_graph(fixture_path("edgeless.json"))

        with pytest.raises(Disconnected):
            ppst_upper_bound(g, 0, 1)
        with pytest.raises(Disconnected):
            ppst_exact(g, 0, 1)

    def test_restricted_library_exhausts(self):
        """P3 alone cannot move a token across a single edge"""
        with pytest.raises(SearchExhausted):
            ppst_exact(path_graph(2), 0, 1, gadget_library=["P3"])

    def test_round_limit(self):
        with pytest.raises(SearchExhausted):
            ppst_exact(path_graph(6), 0, 5, p_max=2)

    def test_search_size_cap(self):
        with pytest.raises(InstanceTooLarge):
            ppst_exact(path_graph(33), 0, 1)


@pytest.mark.unit
class TestProcedures:
    """Test the two construction procedures"""

    def test_procedure1_glues_cycles_at_hub(self, fixture_path):
        """C4 plus three C4 at vertex 0 reproduces the glued fixture"""
        expected, _ = load_graph(fixture_path("glued_c4.json"))
        violations = ViolationsCollector()

        g = procedure1(cycle_graph(4), 0, [(cycle_graph(4), 0)] * 3, violations)

        assert g.vertex_count == expected.vertex_count
        assert g.edge_count == expected.edge_count
        assert metrics(g).diameter == metrics(expected).diameter
        assert violations.warnings == []

    def test_procedure1_warns_on_non_central_hub(self):
        violations = ViolationsCollector()

        g = procedure1(path_graph(3), 0, [(path_graph(2), 0)], violations)

        assert g.vertex_count == 4
        assert [v.condition for v in violations.warnings] == ["central-hub"]
        assert not violations.has_errors

    def test_procedure1_warns_on_attachment_off_boundary(self):
        """Cube boundary is the outer square 4..7; vertex 0 lies inside"""
        from pst_network.pst_graph import cube_graph

        violations = ViolationsCollector()
        procedure1(path_graph(3), 1, [(cube_graph(), 0)], violations)

        assert [v.condition for v in violations.warnings] == ["boundary-attachment"]

    def test_procedure2_builds_complete_bipartite(self, fixture_path, data):
        """C4 plus four common neighbours of 0 and 2 is K2,6"""
        expected, _ = load_graph(fixture_path("k26.json"))

        g = procedure2(cycle_graph(4), 0, 2, 4)

        assert g.edges == expected.edges
        assert g.labels == tuple(range(8))
        tau, _ = find_pst_time(g, 0, 2, 10.0)
        assert tau == pytest.approx(math.pi / math.sqrt(12), abs=1e-6)

    def test_procedure2_keeps_text_labels(self, fixture_path):
        g, _ = load_graph(fixture_path("path4.json"))

        result = procedure2(g, g.vertex("1"), g.vertex("3"), 2)

        assert result.labels == ("1", "2", "3", "4", "5", "6")
        assert result.boundary == g.boundary

    def test_procedure2_rejects_same_vertex(self):
        with pytest.raises(InvalidVertex):
            procedure2(cycle_graph(4), 1, 1, 2)

    def test_procedure2_rejects_negative_count(self):
        with pytest.raises(InvalidVertex):
            procedure2(cycle_graph(4), 0, 2, -1)

    def test_procedure2_never_shortens_distances(self, rng, test_data_generator):
        """With d(u, v) <= 2 a new common neighbour keeps old distances; diameters never decrease"""
        for _ in range(30):
            g = test_data_generator.random_connected_graph(rng, int(rng.integers(3, 10)))
            m = metrics(g)
            u = int(rng.integers(0, g.vertex_count))
            near = [w for w in range(g.vertex_count) if 1 <= m.distance(u, w) <= 2]
            v = int(rng.choice(near))

            for _ in range(4):
                k = g.vertex_count
                grown = procedure2(g, u, v, 1)
                after = metrics(grown)

                assert np.array_equal(after.distances[:k, :k], m.distances)
                assert after.eccentricities[k] <= max(m.eccentricities[u], m.eccentricities[v]) + 1
                assert after.diameter >= m.diameter
                g, m = grown, after

    def test_procedure2_diameter_grows_after_first_vertex(self, rng, test_data_generator):
        """A far pair may shrink the diameter once; later common neighbours never do"""
        for _ in range(30):
            g = test_data_generator.random_connected_graph(rng, int(rng.integers(3, 10)))
            u, v = (int(x) for x in rng.choice(g.vertex_count, size=2, replace=False))

            diameters = [metrics(procedure2(g, u, v, count)).diameter for count in range(1, 6)]

            assert diameters == sorted(diameters)

    def test_far_pair_can_shorten_diameter(self):
        """Endpoints of P5 joined by a common neighbour form C6"""
        g = procedure2(path_graph(5), 0, 4, 1)

        assert metrics(path_graph(5)).diameter == 4
        assert metrics(g).diameter == 3


@pytest.mark.unit
class TestCertifyNetwork:
    """Test p-PST certification of whole networks"""

    def test_glued_cycles_are_2pst(self, fixture_path, data):
        g, _ = load_graph(fixture_path("glued_c4.json"))

        result = certify_network(g, 2)

        assert result.passed
        assert result.max_p == 2
        assert result.max_total_time == pytest.approx(data.SQRT2_PI, abs=1e-9)

    def test_complete_bipartite_is_1pst(self, fixture_path):
        g, _ = load_graph(fixture_path("k26.json"))

        result = certify_network(g, 1)

        assert result.passed
        assert result.to_dict()["verdict"] == "PASS"

    def test_path6_needs_three_transfers(self, fixture_path):
        g, _ = load_graph(fixture_path("path6.json"))

        result = certify_network(g, 2)

        assert not result.passed
        assert result.max_p == 3
        assert result.to_dict()["verdict"] == "FAIL"

    def test_disconnected_graph_fails(self, fixture_path):
        g, _ = load_graph(fixture_path("edgeless.json"))

        result = certify_network(g, 5)

        assert not result.passed
        assert all(row["p"] is None for row in result.rows())

    def test_rows_use_labels(self, fixture_path):
        g, _ = load_graph(fixture_path("path4.json"))

        rows = certify_network(g, 2).rows()

        assert rows[0] == {
            "u": "1", "v": "2", "p": 1, "source": "SEARCH", "total_time": pytest.approx(math.pi / 2),
        }
        assert len(rows) == 6
