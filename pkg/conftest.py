#!/usr/bin/env python
"""
conftest.py - Pytest Configuration and Shared Fixtures

This file provides reusable fixtures and configurations for all unit tests.
"""

import pytest
import sys
from pathlib import Path
from unittest.mock import Mock

import numpy as np

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))


# ============================================================================
# FUNCTION FIXTURES (run before each test function)
# ============================================================================

@pytest.fixture
def rng():
    """Seeded random generator (reproducible randomized tests)"""
    return np.random.default_rng(20240601)


@pytest.fixture
def mock_notification_callback():
    """Mock notification callback"""
    return Mock(return_value=None)


# ============================================================================
# PYTEST HOOKS AND CONFIGURATION
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )


# ============================================================================
# TEST UTILITIES
# ============================================================================

class TestDataGenerator:
    """Generate test data for various scenarios"""

    @staticmethod
    def random_connected_graph(rng, n, extra_edges=2, name="random"):
        """Random spanning tree plus a few extra edges"""
        from pst_network.pst_graph import Graph

        edges = set()
        for v in range(1, n):
            u = int(rng.integers(0, v))
            edges.add((u, v))
        candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
        if candidates and extra_edges:
            picks = rng.choice(len(candidates), size=min(extra_edges, len(candidates)), replace=False)
            edges.update(candidates[int(i)] for i in picks)
        return Graph(tuple(range(n)), tuple(sorted(edges)), None, name)

    @staticmethod
    def random_graph(rng, n, p=0.4, name="gnp"):
        """Erdős-Rényi graph (may be disconnected)"""
        from pst_network.pst_graph import Graph

        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p)
        return Graph(tuple(range(n)), edges, None, name)


@pytest.fixture
def test_data_generator():
    """Provide test data generator"""
    return TestDataGenerator()
