from __future__ import annotations

import math
from itertools import combinations

import networkx as nx
import pytest

from facemax.approx import approx_tables, approximate, max_matching, mis_planar
from facemax.cycles import validate
from facemax.decomp import P, R
from facemax.exact import NEG_INF, exact_tables
from facemax.gen import from_mis, named, random_instance, theta
from facemax.graph import Cycle, build_graph
from facemax.oracle import brute_opt

from conftest import certify, pair_cycles


def test_matching_path():
    assert len(max_matching([(0, 1), (1, 2), (2, 3)])) == 2


def test_matching_triangle():
    assert len(max_matching([(0, 1), (1, 2), (2, 0)])) == 1


def test_matching_petersen():
    g = nx.petersen_graph()
    m = max_matching(g.edges(), g.nodes())
    assert len(m) == 5
    assert len({v for e in m for v in e}) == 10


def test_mis_c5():
    nodes, exact = mis_planar(range(5), [(i, (i + 1) % 5) for i in range(5)])
    assert len(nodes) == 2 and exact


def test_mis_octahedron():
    g = nx.octahedral_graph()
    nodes, _ = mis_planar(g.nodes(), g.edges())
    assert len(nodes) == 2
    assert not g.has_edge(*nodes)


def test_mis_edgeless():
    nodes, _ = mis_planar(range(7), [])
    assert len(nodes) == 7


def test_mis_greedy_branch_is_independent():
    g = nx.grid_2d_graph(9, 9)
    g = nx.convert_node_labels_to_integers(g)
    nodes, exact = mis_planar(g.nodes(), g.edges())
    assert not exact
    assert all(not g.has_edge(a, b) for a, b in combinations(nodes, 2))
    assert len(nodes) >= 81 / 4.5


def test_apx_p_theta3_row():
    g = theta(3, 2)
    cyc = pair_cycles(g, 3)
    apx = approx_tables(g, cyc)
    ex = exact_tables(g, cyc)
    (p,) = [mu for mu in apx.rt.order if apx.rt.kind(mu) == P]
    assert apx.tables[p][frozenset()].value == 1 == ex.tables[p][frozenset()].value


def test_approximate_theta3():
    g = theta(3, 2)
    cyc = pair_cycles(g, 3)
    sol = approximate(g, cyc)
    assert sol.value in (2, 3) and sol.factor == 2.0 and sol.theorem == "Theorem 7"
    certify(g, validate(g, cyc), sol)


def test_approximate_from_mis_k4():
    inst = from_mis(named("K4"))
    sol = approximate(inst.graph, inst.cycles, 0.5)
    assert sol.value == 1
    assert sol.factor == 4.5 and sol.theorem == "Theorem 9"
    certify(inst.graph, inst.cycles, sol)


def test_approximate_empty(k4):
    assert approximate(k4, []).value == 0


def test_bad_epsilon(k4):
    with pytest.raises(ValueError):
        approximate(k4, [], 0)


def test_subdivided_k4_r_row():
    # K4 with every edge subdivided; two faces of the rigid skeleton as cycles
    base = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = []
    for i, (a, b) in enumerate(base):
        edges += [(a, 4 + i), (4 + i, b)]
    g = build_graph(10, edges)
    cyc = [Cycle.from_vertices(g, (0, 4, 1, 7, 2, 5)), Cycle.from_vertices(g, (1, 8, 3, 9, 2, 7))]
    apx = approx_tables(g, cyc)
    ex = exact_tables(g, cyc)
    (r,) = [mu for mu in ex.rt.order if ex.rt.kind(mu) == R]
    for I, e in ex.tables[r].items():
        got = apx.tables[r][I].value
        assert got <= e.value
        assert got >= e.value / 4.5 or e.value == NEG_INF


def _sandwich(apx, ex, c):
    for mu, table in ex.tables.items():
        for I, e in table.items():
            got = apx.tables[mu][I].value
            if e.value == NEG_INF:
                assert got == NEG_INF
            else:
                assert e.value / c <= got <= e.value


@pytest.mark.parametrize("seed", range(8))
def test_table_sandwich_series_parallel(seed):
    inst = random_instance("series_parallel", 14, "condition_thm6", seed)
    _sandwich(approx_tables(inst.graph, inst.cycles), exact_tables(inst.graph, inst.cycles, check=False), 2)


@pytest.mark.parametrize("seed", range(8))
def test_table_sandwich_general(seed):
    inst = random_instance("biconnected", 12, "condition_thm5", seed)
    _sandwich(approx_tables(inst.graph, inst.cycles), exact_tables(inst.graph, inst.cycles), 4.5)


@pytest.mark.parametrize("k", range(3, 7))
def test_theta_all_pairs_bound(k):
    g = theta(k, 2)
    cyc = pair_cycles(g, k)
    sol = approximate(g, cyc)
    opt = brute_opt(g, cyc).value
    assert opt == k
    assert math.ceil(opt / 2) <= sol.value <= opt
