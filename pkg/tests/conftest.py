"""Shared fixtures; puts src/ on the import path."""

from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from graph import AttributedGraph  # noqa: E402

# Example network with nodes A..F = 0..5; A, C, E are red (1), B, D, F blue (0)
A, B, C, D, E, F = range(6)
EXAMPLE_LABELS = [1, 0, 1, 0, 1, 0]
EXAMPLE_EDGES = [(A, B), (B, C), (C, E), (B, D), (E, F), (C, D), (D, E)]


@pytest.fixture
def triangle() -> AttributedGraph:
    return AttributedGraph([0, 0, 0], [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star() -> AttributedGraph:
    """5-node star centred on node 0."""
    return AttributedGraph([0, 1, 0, 1, 0], [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def path4() -> AttributedGraph:
    return AttributedGraph([0, 1, 0, 1], [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def example_network() -> AttributedGraph:
    return AttributedGraph(EXAMPLE_LABELS, EXAMPLE_EDGES)
