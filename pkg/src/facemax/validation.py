"""Input coercion shared by the estimator, the dispatcher and the CLI."""

from __future__ import annotations

import numbers
from typing import Any

import networkx as nx

from .cycles import CycleSet, validate
from .errors import NotBiconnected
from .graph import Multigraph, build_graph, is_biconnected

MODES = ("auto", "exact", "sp-fpt", "sp-two-shared", "approx", "oracle")


def check_graph(graph: Any, *, require_biconnected: bool = True) -> Multigraph:
    """Accept a Multigraph, an ``(n, edges)`` pair or a networkx graph on 0..n-1."""
    if isinstance(graph, Multigraph):
        g = graph
    elif isinstance(graph, nx.Graph):
        nodes = sorted(graph.nodes())
        if nodes != list(range(len(nodes))):
            raise ValueError("networkx graphs must use vertices 0..n-1")
        g = build_graph(len(nodes), [(u, v) for u, v, *_ in graph.edges])
    elif isinstance(graph, tuple) and len(graph) == 2 and isinstance(graph[0], numbers.Integral):
        g = build_graph(int(graph[0]), graph[1])
    else:
        raise TypeError(f"cannot interpret {type(graph).__name__} as a graph")
    if require_biconnected and not is_biconnected(g):
        raise NotBiconnected("graph must be biconnected with at least 3 vertices")
    return g


def check_cycles(graph: Multigraph, cycles: Any) -> CycleSet:
    if isinstance(cycles, CycleSet):
        if cycles.graph != graph:
            raise ValueError("cycle set belongs to a different graph")
        return cycles
    if cycles is None:
        cycles = []
    return validate(graph, list(cycles))


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")
    return mode


def check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return epsilon

