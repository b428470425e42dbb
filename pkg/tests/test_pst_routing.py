#!/usr/bin/env python
"""
test_pst_routing.py - Unit Tests for Quantum Routing

Tests cover:
- Routing problem validation (boundary terminals, shared terminals)
- Table verification: conditions 1-3, transfers, amplitudes
- Literal claimed-time tables versus corrected tables
- EXACT and GREEDY solvers, classical edge-disjoint routing
- Table JSON and text emission
"""

import math

import pytest
from pathlib import Path
import sys

# Add project to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from pst_network.pst_errors import InstanceTooLarge, MalformedDocument, RoutingInputError
from pst_network.pst_engineering import Schedule, make_gadget
from pst_network.pst_graph import Graph, path_graph
from pst_network.pst_io import load_graph, load_table
from pst_network.pst_routing import (
    Net,
    RoutingProblem,
    SolveMode,
    build_table,
    classical_feasible,
    emit_table,
    nets_from_dict,
    nets_from_table,
    nets_to_dict,
    parse_table,
    render_table,
    solve,
    table_to_dict,
    verify_table,
)


def _table(problem, fixture_path, name):
    return load_table(problem.host, fixture_path(name))


def _conditions(report):
    return {v.condition for v in report.violations}


@pytest.mark.unit
class TestRoutingProblem:
    """Test routing problem validation"""

    def test_fixture_nets(self, routing_a, data):
        host = routing_a.host
        nets = [(n.id, host.name_of(n.sender), host.name_of(n.receiver)) for n in routing_a.nets]

        assert nets == data.ROUTING_A_NETS

    def test_terminal_off_boundary(self, routing_b):
        """Cube vertex 0 lies inside the outer face"""
        host = routing_b.host

        with pytest.raises(RoutingInputError):
            RoutingProblem(host, (Net(1, host.vertex("0"), host.vertex("12")),))

    def test_shared_terminal(self, routing_a):
        host = routing_a.host

        with pytest.raises(RoutingInputError):
            RoutingProblem(host, (Net(1, host.vertex("1"), host.vertex("5")),
                                  Net(2, host.vertex("5"), host.vertex("4"))))

    def test_sender_equals_receiver(self):
        with pytest.raises(RoutingInputError):
            Net(1, 0, 0)

    def test_duplicate_net_ids(self):
        with pytest.raises(RoutingInputError):
            RoutingProblem(path_graph(4), (Net(1, 0, 1), Net(1, 2, 3)))

    def test_nets_json(self, routing_a):
        doc = nets_to_dict(routing_a.host, routing_a.nets)

        assert doc == {"nets": [
            {"id": 1, "sender": "1", "receiver": "5"},
            {"id": 2, "sender": "6", "receiver": "4"},
        ]}
        assert nets_from_dict(routing_a.host, doc) == routing_a.nets

    def test_nets_unknown_vertex(self, routing_a):
        with pytest.raises(MalformedDocument) as exc_info:
            nets_from_dict(routing_a.host, {"nets": [{"sender": "1", "receiver": "99"}]})

        assert exc_info.value.field == "nets[0].receiver"


@pytest.mark.unit
class TestVerifyFixtureTables:
    """Test verification of the fixture tables"""

    def test_square_table_passes(self, routing_a, fixture_path, data):
        report = verify_table(routing_a, _table(routing_a, fixture_path, "routing_a_table.json"))

        assert report.passed
        assert report.rounds == 3
        assert report.total_time == pytest.approx(3 * data.HALF_PI)
        for magnitude in report.net_magnitudes.values():
            assert magnitude == pytest.approx(1.0, abs=1e-9)

    def test_square_table_text(self, routing_a, fixture_path, data):
        table = _table(routing_a, fixture_path, "routing_a_table.json")

        assert render_table(table).splitlines() == data.ROUTING_A_ROWS
        assert table.column_count == 5

    def test_square_claimed_time_fails(self, routing_a, fixture_path, data):
        """Q2 at π/√2 moves the tokens with |a| = sin²(π/√2)"""
        report = verify_table(routing_a, _table(routing_a, fixture_path, "routing_a_table_literal.json"))
        losses = [v for v in report.violations if v.condition == "transfer-amplitude"]

        assert not report.passed
        assert len(losses) == 2
        assert all(v.round_index == 1 for v in losses)
        assert losses[0].magnitude == pytest.approx(data.C4_LITERAL_MAGNITUDE, abs=1e-9)

    def test_cube_table_passes(self, routing_b, fixture_path):
        """Includes tokens idling at the middle of an active P3"""
        table = _table(routing_b, fixture_path, "routing_b_table.json")

        report = verify_table(routing_b, table)

        assert report.passed, report.to_dict()["violations"]
        assert report.rounds == 5
        assert all(len(it.cells) == 7 for it in table.itineraries)

    def test_cube_claimed_time_fails(self, routing_b, fixture_path, data):
        report = verify_table(routing_b, _table(routing_b, fixture_path, "routing_b_table_literal.json"))
        losses = [v for v in report.violations if v.condition == "transfer-amplitude"]

        assert not report.passed
        assert {v.round_index for v in losses} == {2}
        expected = abs(math.sin(data.PI_OVER_SQRT2)) ** 3
        assert all(v.magnitude == pytest.approx(expected, abs=1e-9) for v in losses)

    def test_wrong_receivers_violate_condition_1(self, routing_a, fixture_path):
        host = routing_a.host
        swapped = RoutingProblem(host, (Net(1, host.vertex("1"), host.vertex("4")),
                                        Net(2, host.vertex("6"), host.vertex("5"))))

        report = verify_table(swapped, _table(routing_a, fixture_path, "routing_a_table.json"))

        assert not report.passed
        assert "condition-1" in _conditions(report)

    def test_every_round_is_needed(self, routing_a, fixture_path):
        table = _table(routing_a, fixture_path, "routing_a_table.json")

        for index in range(table.round_count):
            assert not verify_table(routing_a, table.without_round(index)).passed

    def test_report_document(self, routing_a, fixture_path):
        doc = verify_table(routing_a, _table(routing_a, fixture_path, "routing_a_table.json")).to_dict()

        assert list(doc) == ["verdict", "rounds", "total_time", "nets", "violations"]
        assert [n["net"] for n in doc["nets"]] == [1, 2]
        assert doc["violations"] == []


@pytest.mark.unit
class TestVerifyConstructedTables:
    """Test violations on hand-built tables"""

    def test_exit_collision_and_idle_loss(self):
        """Token idling on the target of a K2 transfer"""
        g = path_graph(4)
        schedule = Schedule.from_gadgets(g, [[make_gadget(g, "K2", [0, 1], transfers=[(0, 1)])]])
        nets = (Net(1, 0, 2), Net(2, 1, 3))

        table = build_table(schedule, nets, [[0, 1], [1, 1]])
        report = verify_table(RoutingProblem(g, nets), table)

        assert not report.passed
        assert {"condition-3", "idle-amplitude", "condition-1"} <= _conditions(report)

    def test_transfer_not_in_round(self):
        g = path_graph(3)
        schedule = Schedule.from_gadgets(g, [[make_gadget(g, "K2", [0, 1])]])
        nets = (Net(1, 1, 2),)

        report = verify_table(RoutingProblem(g, nets), build_table(schedule, nets, [[1, 2]]))

        assert "transfer" in _conditions(report)

    def test_missing_row(self):
        g = path_graph(4)
        schedule = Schedule.from_gadgets(g, [[make_gadget(g, "K2", [0, 1])]])
        nets = (Net(1, 0, 1), Net(2, 3, 2))

        report = verify_table(RoutingProblem(g, nets), build_table(schedule, nets[:1], [[0, 1]]))

        assert not report.passed
        assert [v.net for v in report.violations] == [2]
        assert _conditions(report) == {"structure"}

    def test_empty_schedule_has_one_column(self):
        g = path_graph(2)
        nets = (Net(1, 0, 1),)

        table = build_table(Schedule(g), nets, [[0]])

        assert table.column_count == 1
        assert render_table(table) == "{0}\n"
        assert "condition-1" in _conditions(verify_table(RoutingProblem(g, nets), table))

    def test_transfer_without_rounds_fails(self, routing_a):
        """With no rounds the only column is an idle mark; a bare transfer moves nothing"""
        host = routing_a.host
        nets = (Net(1, host.vertex("1"), host.vertex("5")),)
        doc = {"schedule": {"rounds": []},
               "itineraries": [{"net": 1, "cells": [{"transfer": ["1", "5"]}]}]}

        report = verify_table(RoutingProblem(host, nets), parse_table(host, doc))

        assert not report.passed
        assert "structure" in _conditions(report)
        assert report.rounds == 0
        assert report.net_magnitudes == {}


@pytest.mark.unit
class TestSolve:
    """Test EXACT and GREEDY routing"""

    @pytest.mark.parametrize("mode", [SolveMode.EXACT, SolveMode.GREEDY])
    def test_square_with_pendants(self, routing_a, mode):
        table = solve(routing_a, mode=mode)

        assert table is not None
        assert table.round_count == 3
        assert verify_table(routing_a, table).passed

    def test_cube_with_pendants_greedy(self, routing_b):
        table = solve(routing_b, mode="greedy")

        assert table is not None
        assert table.round_count <= 6
        assert verify_table(routing_b, table).passed

    def test_exact_size_limit(self):
        g = path_graph(21)

        with pytest.raises(InstanceTooLarge):
            solve(RoutingProblem(g, (Net(1, 0, 20),)), mode="EXACT")

    def test_round_cap_exhausted(self, routing_a):
        assert solve(routing_a, mode="GREEDY", round_cap=1) is None
        assert solve(routing_a, mode="EXACT", round_cap=2) is None

    def test_unreachable_receiver(self, fixture_path):
        g, _ = load_graph(fixture_path("edgeless.json"))
        problem = RoutingProblem(g, (Net(1, 0, 1),))

        assert solve(problem, mode="EXACT") is None
        assert solve(problem, mode="GREEDY") is None

    @pytest.mark.slow
    def test_solutions_verify_on_random_graphs(self, rng, test_data_generator):
        """Every returned table passes; EXACT never uses more rounds than GREEDY"""
        for _ in range(50):
            n = int(rng.integers(6, 15))
            q = int(rng.integers(1, 4))
            g = test_data_generator.random_connected_graph(rng, n, extra_edges=3)
            terminals = [int(v) for v in rng.choice(n, size=2 * q, replace=False)]
            problem = RoutingProblem(g, tuple(Net(i + 1, terminals[2 * i], terminals[2 * i + 1])
                                              for i in range(q)))

            exact = solve(problem, mode="EXACT")
            greedy = solve(problem, mode="GREEDY")

            if exact is not None:
                assert verify_table(problem, exact).passed
            if greedy is not None:
                assert verify_table(problem, greedy).passed
                assert exact is not None
                assert exact.round_count <= greedy.round_count


@pytest.mark.unit
class TestClassicalRouting:
    """Test edge-disjoint classical routing"""

    def test_square_is_infeasible(self, routing_a):
        assert classical_feasible(routing_a).feasible is False

    def test_cube_is_infeasible(self, routing_b):
        assert classical_feasible(routing_b).feasible is False

    def test_single_net_on_path(self, fixture_path):
        g, _ = load_graph(fixture_path("path4.json"))

        report = classical_feasible(RoutingProblem(g, (Net(1, 0, 3),)))

        assert report.feasible
        assert report.to_dict(g)["paths"] == [["1", "2", "3", "4"]]

    def test_too_many_nets(self):
        g = path_graph(10)
        nets = tuple(Net(i, 2 * i, 2 * i + 1) for i in range(5))

        with pytest.raises(InstanceTooLarge):
            classical_feasible(RoutingProblem(g, nets))


@pytest.mark.unit
class TestTableCodec:
    """Test RoutingTable JSON and text"""

    def test_json_round_trip(self, routing_b, fixture_path):
        table = _table(routing_b, fixture_path, "routing_b_table.json")

        assert parse_table(routing_b.host, table_to_dict(table)) == table

    def test_emit_table(self, routing_a, fixture_path, data):
        table = _table(routing_a, fixture_path, "routing_a_table.json")

        text, doc = emit_table(table)

        assert text == "\n".join(data.ROUTING_A_ROWS) + "\n"
        assert doc["itineraries"][0]["cells"][0] == {"idle": "1"}
        assert doc["itineraries"][0]["cells"][1] == {"transfer": ["1", "2"]}

    def test_nets_from_table(self, routing_a, fixture_path):
        table = _table(routing_a, fixture_path, "routing_a_table.json")

        assert nets_from_table(table) == routing_a.nets

    def test_cell_with_two_fields(self, routing_a):
        doc = {
            "schedule": {"rounds": []},
            "itineraries": [{"net": 1, "cells": [{"idle": "1", "transfer": ["1", "2"]}]}],
        }

        with pytest.raises(MalformedDocument) as exc_info:
            parse_table(routing_a.host, doc)

        assert exc_info.value.field == "itineraries[0].cells[0]"

    def test_missing_schedule(self):
        with pytest.raises(MalformedDocument):
            parse_table(Graph((0, 1), ((0, 1),)), {"itineraries": []})
