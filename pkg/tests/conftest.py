from __future__ import annotations

import sys

import pytest

from facemax.gen import named, theta
from facemax.graph import Cycle, face_masks, trace_faces


def pair_cycles(g, k):
    """All cycles formed by two of the k pole-to-pole paths of ``theta(k, length)``."""
    length = g.m // k
    paths = [list(range(i * length, (i + 1) * length)) for i in range(k)]
    return [Cycle.from_edges(g, paths[i] + paths[j]) for i in range(k) for j in range(i + 1, k)]


def certify(graph, cycles, sol):
    """Planar rotation, and the claimed realized ids are exactly the facial ones."""
    trace_faces(graph, sol.embedding)
    faces = set(face_masks(sol.embedding))
    masks = [c.mask for c in cycles]
    facial = tuple(i for i, m in enumerate(masks) if m in faces)
    assert facial == tuple(sol.realized)
    assert sol.value == len(facial)


@pytest.fixture
def k4():
    return named("K4")


@pytest.fixture
def k23():
    return named("K23")


@pytest.fixture
def theta3():
    g = theta(3, 2)
    return g, pair_cycles(g, 3)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
