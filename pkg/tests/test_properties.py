from __future__ import annotations

from itertools import permutations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from facemax.api import solve
from facemax.approx import approximate, mis_planar
from facemax.decomp import build_spqr, compose_embedding, root_at
from facemax.exact import linear_order, solve_exact, solve_sp_fpt
from facemax.gen import random_instance, theta
from facemax.graph import trace_faces
from facemax.io import format_instance, parse_instance
from facemax.oracle import brute_opt

from conftest import certify, pair_cycles

SETTINGS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(k=st.integers(3, 5), length=st.integers(2, 3), data=st.data())
def test_theta_subsets_match_oracle(k, length, data):
    g = theta(k, length)
    pool = pair_cycles(g, k)
    cyc = data.draw(st.lists(st.sampled_from(pool), unique_by=lambda c: c.mask, min_size=0, max_size=len(pool)))
    opt = brute_opt(g, cyc).value
    assert solve_sp_fpt(g, cyc).value == opt
    apx = approximate(g, cyc)
    assert -(-opt // 2) <= apx.value <= opt


@SETTINGS
@given(seed=st.integers(0, 10_000), n=st.integers(6, 14))
def test_exact_matches_oracle(seed, n):
    inst = random_instance("biconnected", n, "condition_thm5", seed, max_cycles=8)
    sol = solve_exact(inst.graph, inst.cycles)
    certify(inst.graph, inst.cycles, sol)
    assert sol.value == brute_opt(inst.graph, inst.cycles).value


@SETTINGS
@given(seed=st.integers(0, 10_000))
def test_auto_factor_never_worse_than_approx(seed):
    inst = random_instance("biconnected", 10, "random_simple_cycles", seed, max_cycles=6)
    auto = solve(inst.graph, inst.cycles)
    apx = solve(inst.graph, inst.cycles, "approx")
    assert auto.factor <= apx.factor
    assert auto.value >= 0 and apx.value <= brute_opt(inst.graph, inst.cycles).value


@SETTINGS
@given(seed=st.integers(0, 10_000), family=st.sampled_from(["series_parallel", "triconnected", "biconnected"]), data=st.data())
def test_composition_is_planar_for_every_root(seed, family, data):
    g = random_instance(family, 10, "faces_of_random_embedding", seed).graph
    tree = build_spqr(g)
    e = data.draw(st.integers(0, g.m - 1))
    faces = trace_faces(g, compose_embedding(root_at(tree, e)))
    assert len(faces) == g.m - g.n + 2


@SETTINGS
@given(n=st.integers(1, 6), data=st.data())
def test_linear_order_agrees_with_permutations(n, data):
    nodes = list(range(n))
    all_pairs = [(a, b) for a in nodes for b in nodes if a < b]
    pairs = data.draw(st.lists(st.sampled_from(all_pairs), unique=True, max_size=n)) if all_pairs else []
    ends = data.draw(st.lists(st.sampled_from(nodes), unique=True, max_size=min(2, n)))

    def ok(order):
        pos = {v: i for i, v in enumerate(order)}
        if any(abs(pos[a] - pos[b]) != 1 for a, b in pairs):
            return False
        if ends and order[0] != ends[0]:
            return False
        return len(ends) < 2 or order[-1] == ends[1]

    exists = any(ok(p) for p in permutations(nodes))
    got = linear_order(nodes, pairs, ends)
    assert (got is not None) == exists
    if got is not None:
        assert ok(got) and sorted(got) == nodes


@SETTINGS
@given(n=st.integers(0, 12), data=st.data())
def test_mis_exact_against_subsets(n, data):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=2 * n)) if pairs else []
    chosen, exact = mis_planar(range(n), edges)
    assert exact
    best = 0
    for mask in range(1 << n):
        if all(not (mask >> a & 1 and mask >> b & 1) for a, b in edges):
            best = max(best, bin(mask).count("1"))
    assert len(chosen) == best
    assert all(not (a in chosen and b in chosen) for a, b in edges)


@SETTINGS
@given(seed=st.integers(0, 10_000))
def test_instance_round_trip(seed):
    inst = random_instance("series_parallel", 12, "random_simple_cycles", seed)
    g, cs = parse_instance(format_instance(inst.graph, inst.cycles))
    assert g == inst.graph and cs.masks == inst.cycles.masks
