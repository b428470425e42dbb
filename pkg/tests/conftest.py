"""conftest.py - Pytest configuration and fixtures

Provides common fixtures for all tests:
- Catalog graphs and PST constants
- Fixtures corpus (graphs, nets, routing tables)
- CLI runner
- Temporary directories
"""

import math
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

FIXTURES = project_root / "fixtures"


class TestData:
    """Common test data constants"""

    HALF_PI = math.pi / 2
    PI_OVER_SQRT2 = math.pi / math.sqrt(2)
    SQRT2_PI = math.sqrt(2) * math.pi

    # |sin(π/√2)|²: antipodal C4 amplitude at the claimed time
    C4_LITERAL_MAGNITUDE = math.sin(math.pi / math.sqrt(2)) ** 2

    CUBE_ANTIPODES = [(0, 7), (1, 4), (2, 5), (3, 6)]

    ROUTING_A_NETS = [(1, "1", "5"), (2, "6", "4")]
    ROUTING_A_ROWS = [
        "{1} | (1,2) | (2,8) | (8,5) | {5}",
        "{6} | (6,7) | (7,3) | (3,4) | {4}",
    ]
    ROUTING_B_NETS = [(1, "8", "12"), (2, "9", "13"), (3, "15", "10"), (4, "14", "11")]

    TOLERANCE = 1e-9

    @staticmethod
    def fixture(name):
        """Path of a file in the fixtures corpus"""
        return FIXTURES / name


@pytest.fixture
def fixture_path():
    """Resolve fixture file names to paths (as str for the CLI)"""
    return lambda name: str(FIXTURES / name)


@pytest.fixture
def runner():
    """CliRunner with stderr kept apart from stdout"""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch):
    """No PST_* variables leak into tests from the developer's shell or .env"""
    import os

    for variable in list(os.environ):
        if variable.startswith("PST_"):
            monkeypatch.delenv(variable, raising=False)
    monkeypatch.setattr("pst_network.pst_config.load_dotenv", lambda *args, **kwargs: False)


@pytest.fixture
def routing_a():
    """Square with four pendants and its two nets"""
    from pst_network.pst_io import load_graph, load_nets
    from pst_network.pst_routing import RoutingProblem

    g, _ = load_graph(FIXTURES / "routing_a_graph.json")
    return RoutingProblem(g, load_nets(g, FIXTURES / "routing_a_nets.json"))


@pytest.fixture
def routing_b():
    """Cube with eight pendants and its four nets"""
    from pst_network.pst_io import load_graph, load_nets
    from pst_network.pst_routing import RoutingProblem

    g, _ = load_graph(FIXTURES / "routing_b_graph.json")
    return RoutingProblem(g, load_nets(g, FIXTURES / "routing_b_nets.json"))


@pytest.fixture
def data():
    """Access TestData constants from tests"""
    return TestData
