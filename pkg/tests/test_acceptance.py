"""Acceptance criteria 1-10.

Each criterion is computed once (cached) and reported as one PASS/FAIL line
in the pytest terminal summary.  ``python tests/test_acceptance.py`` runs
them all without pytest and prints the same lines.
"""

from __future__ import annotations

import functools
import math
import random
import sys
import time
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import certify, pair_cycles  # noqa: E402

from facemax.approx import approximate, max_matching, mis_planar  # noqa: E402
from facemax.cycles import CycleIndex, check_all_facial, validate  # noqa: E402
from facemax.decomp import build_spqr, root_at  # noqa: E402
from facemax.exact import exact_tables, solve_exact, solve_sp_fpt, solve_sp_two_shared  # noqa: E402
from facemax.gen import circular_order_optimum, from_hamiltonian, from_mis, named, random_graph, random_instance, theta  # noqa: E402
from facemax.graph import face_masks, trace_faces  # noqa: E402
from facemax.oracle import AUDIT, audit_embedding, brute_feasible, brute_opt, brute_table, reset_audit  # noqa: E402

BUDGET = 10**6
EPSILON = 0.5
RESULTS: dict[int, tuple[bool, str]] = {}


def report(number: int, ok: bool, detail: str, seconds: float, limit: float | None = None) -> bool:
    timed = limit is None or seconds < limit
    line_ok = ok and timed
    extra = f" ({seconds:.1f}s" + (f" < {limit:.0f}s" if limit else "") + ")"
    RESULTS[number] = (line_ok, detail + extra + ("" if timed else " TOO SLOW"))
    print(f"criterion {number}: {'PASS' if line_ok else 'FAIL'} {detail}{extra}")
    return line_ok


def _checked(graph, cycles, sol):
    certify(graph, cycles, sol)
    audit_embedding(graph, cycles, sol.embedding)


# corpora ---------------------------------------------------------------------


@functools.cache
def corpus1():
    return [random_instance("series_parallel", 8 + s % 23, "condition_thm6", s, max_embeddings=BUDGET) for s in range(200)]


@functools.cache
def corpus2():
    return [random_instance("series_parallel", 8 + s % 23, "condition_r", s, max_embeddings=BUDGET, r=3) for s in range(100)]


@functools.cache
def corpus3():
    return [random_instance("biconnected", 6 + s % 15, "condition_thm5", s, max_embeddings=BUDGET) for s in range(100)]


@functools.cache
def optima(which: int) -> tuple[int, ...]:
    corpus = {1: corpus1, 2: corpus2, 3: corpus3}[which]()
    return tuple(brute_opt(i.graph, i.cycles, budget=BUDGET).value for i in corpus)


# criteria ---------------------------------------------------------------------


@functools.cache
def criterion1() -> bool:
    start = time.perf_counter()
    bad = []
    for inst, opt in zip(corpus1(), optima(1)):
        assert inst.graph.n <= 30 and inst.cycles.max_pairwise_shared() <= 2
        sol = solve_sp_two_shared(inst.graph, inst.cycles)
        _checked(inst.graph, inst.cycles, sol)
        if sol.value != opt:
            bad.append(inst.meta["seed"])
    return report(1, not bad, f"sp-two-shared == oracle on {200 - len(bad)}/200, mismatched seeds {bad}", time.perf_counter() - start, 120)


@functools.cache
def criterion2() -> bool:
    start = time.perf_counter()
    bad = []
    for inst, opt in zip(corpus2(), optima(2)):
        assert inst.cycles.max_multi_intersections() <= 3
        sol = solve_sp_fpt(inst.graph, inst.cycles, r=3)
        _checked(inst.graph, inst.cycles, sol)
        if sol.value != opt:
            bad.append(inst.meta["seed"])
    return report(2, not bad, f"sp-fpt == oracle on {100 - len(bad)}/100, mismatched seeds {bad}", time.perf_counter() - start, 120)


@functools.cache
def criterion3() -> bool:
    start = time.perf_counter()
    bad = []
    for inst, opt in zip(corpus3(), optima(3)):
        assert inst.graph.n <= 20 and inst.cycles.max_multi_intersections() <= 2
        sol = solve_exact(inst.graph, inst.cycles)
        _checked(inst.graph, inst.cycles, sol)
        if sol.value != opt:
            bad.append(inst.meta["seed"])
    return report(3, not bad, f"exact == oracle on {100 - len(bad)}/100, mismatched seeds {bad}", time.perf_counter() - start, 300)


@functools.cache
def criterion4() -> bool:
    start = time.perf_counter()
    entries = mismatches = neg = 0
    for inst in corpus3()[:25]:
        ctx = exact_tables(inst.graph, inst.cycles)
        for mu in ctx.rt.order:
            if mu == ctx.rt.root:
                continue  # the root Q-node has no parent edge to constrain
            want = brute_table(ctx.rt, ctx.idx, mu, budget=BUDGET)
            for I, entry in ctx.tables[mu].items():
                entries += 1
                neg += entry.value == -math.inf
                mismatches += entry.value != want[I]
            mismatches += set(want) != set(ctx.tables[mu])
    ok = mismatches == 0 and entries > 0
    return report(4, ok, f"{entries} table entries ({neg} infeasible), {mismatches} mismatches", time.perf_counter() - start, 300)


@functools.cache
def criterion5() -> bool:
    start = time.perf_counter()
    cases = [(i.graph, i.cycles, opt) for i, opt in zip(corpus1(), optima(1))]
    for k in range(3, 9):
        g = theta(k, 2)
        cyc = validate(g, pair_cycles(g, k))
        cases.append((g, cyc, brute_opt(g, cyc, budget=BUDGET).value))
    violations = 0
    ratios = []
    for g, cyc, opt in cases:
        sol = approximate(g, cyc, EPSILON)
        assert sol.factor == 2.0
        _checked(g, cyc, sol)
        violations += not (math.ceil(opt / 2) <= sol.value <= opt)
        if opt:
            ratios.append(sol.value / opt)
    detail = f"{len(cases)} instances, {violations} violations, worst ratio {min(ratios):.3f}"
    return report(5, violations == 0, detail, time.perf_counter() - start)


@functools.cache
def criterion6() -> bool:
    start = time.perf_counter()
    violations = 0
    ratios = []
    heuristic = 0
    for inst, opt in zip(corpus3(), optima(3)):
        sol = approximate(inst.graph, inst.cycles, EPSILON)
        _checked(inst.graph, inst.cycles, sol)
        heuristic += sol.heuristic
        violations += not (opt / (4 + EPSILON) <= sol.value <= opt)
        if opt:
            ratios.append(sol.value / opt)
    detail = f"100 instances, {violations} violations, worst ratio {min(ratios):.3f}, {heuristic} used heuristic MIS"
    return report(6, violations == 0, detail, time.perf_counter() - start)


def _mis_by_subsets(h) -> int:
    best = 0
    for mask in range(1 << h.n):
        size = bin(mask).count("1")
        if size > best and all(not (mask >> a & 1 and mask >> b & 1) for a, b in h.edges):
            best = size
    return best


@functools.cache
def criterion7() -> bool:
    start = time.perf_counter()
    cases = [
        ("from_mis(K4)", from_mis(named("K4")), 1),
        ("from_mis(cube)", from_mis(named("cube")), _mis_by_subsets(named("cube"))),
        ("from_hamiltonian(K4)", from_hamiltonian(named("K4")), 4),
        ("from_hamiltonian(K33)", from_hamiltonian(named("K33")), 6),
    ]
    bridged = named("bridged_double_k4")
    cases.append(("from_hamiltonian(bridged)", from_hamiltonian(bridged), circular_order_optimum(bridged)))
    ok = cases[-1][2] <= 9 and cases[1][2] == 4
    parts = []
    for label, inst, expected in cases:
        sol = brute_opt(inst.graph, inst.cycles, budget=10**7)
        _checked(inst.graph, inst.cycles, sol)
        apx = approximate(inst.graph, inst.cycles, EPSILON)
        _checked(inst.graph, inst.cycles, apx)
        good = sol.value == expected and sol.value / apx.factor <= apx.value <= sol.value
        ok &= good
        parts.append(f"{label}={sol.value}{'' if good else '!'}")
    return report(7, ok, ", ".join(parts), time.perf_counter() - start, 600)


@functools.cache
def criterion8() -> bool:
    start = time.perf_counter()
    rng = random.Random("criterion8")
    pairs = agree = true_cases = witnesses = 0
    seed = 0
    while pairs < 300:
        seed += 1
        family = rng.choice(["series_parallel", "triconnected", "biconnected"])
        policy = "faces_of_random_embedding" if seed % 3 == 0 else "random_simple_cycles"
        inst = random_instance(family, rng.randint(6, 14), policy, seed, max_embeddings=20000)
        if not len(inst.cycles):
            continue
        k = rng.randint(1, len(inst.cycles))
        sub = rng.sample(list(inst.cycles), k)
        fast, witness = check_all_facial(inst.graph, sub)
        slow, _ = brute_feasible(inst.graph, sub, budget=BUDGET)
        pairs += 1
        agree += fast == slow
        if fast:
            true_cases += 1
            trace_faces(inst.graph, witness)
            audit_embedding(inst.graph, inst.cycles, witness)
            faces = set(face_masks(witness))
            witnesses += all(c.mask in faces for c in sub)
    ok = agree == pairs and witnesses == true_cases
    detail = f"{agree}/{pairs} agree, {true_cases} feasible, {witnesses} witnesses verified"
    return report(8, ok, detail, time.perf_counter() - start, 180)


@functools.cache
def criterion9() -> bool:
    start = time.perf_counter()
    for run in (criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8):
        run()
    crowded = 0
    for inst in corpus3():
        tree = build_spqr(inst.graph)
        for e in range(inst.graph.m):
            idx = CycleIndex(root_at(tree, e), inst.cycles)
            crowded += any(len(iface) > 3 for iface in idx.interface)
    ok = (
        AUDIT["embeddings"] > 0
        and AUDIT["euler_failures"] == 0
        and AUDIT["facial_interface_violations"] == 0
        and crowded == 0
    )
    detail = (
        f"{AUDIT['embeddings']} embeddings, {AUDIT['euler_failures']} Euler failures, "
        f"{AUDIT['facial_interface_violations']}/{AUDIT['facial_interface_checks']} violations of at most two facial interface cycles, "
        f"{crowded} nodes with more than three interface cycles over every root"
    )
    return report(9, ok, detail, time.perf_counter() - start)


def _matching_by_search(n: int, edges) -> int:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    @functools.cache
    def best(free: int) -> int:
        if free == 0:
            return 0
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        out = best(rest)
        nb = adj[v] & rest
        while nb:
            w = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            out = max(out, 1 + best(rest & ~(1 << w)))
        return out

    return best((1 << n) - 1)


def _mis_by_search(n: int, edges) -> int:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def best(cand: int) -> int:
        if cand == 0:
            return 0
        v = (cand & -cand).bit_length() - 1
        return max(best(cand & ~(1 << v)), 1 + best(cand & ~(1 << v) & ~adj[v]))

    return best((1 << n) - 1)


@functools.cache
def criterion10() -> bool:
    start = time.perf_counter()
    rng = random.Random("criterion10")
    match_bad = 0
    for _ in range(500):
        n = rng.randint(1, 12)
        p = rng.random()
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
        m = max_matching(edges, range(n))
        used = [v for e in m for v in e]
        valid = len(used) == len(set(used)) and all(e in {(min(a, b), max(a, b)) for a, b in edges} for e in m)
        match_bad += not valid or len(m) != _matching_by_search(n, edges)
    mis_bad = 0
    for i in range(200):
        family = rng.choice(["series_parallel", "triconnected", "biconnected"])
        g = random_graph(family, rng.randint(4, 20), rng)
        assert g.n <= 20
        edges = sorted({(min(a, b), max(a, b)) for a, b in g.edges if rng.random() < 0.85})
        assert nx.check_planarity(nx.Graph(edges))[0] if edges else True
        chosen, exact = mis_planar(range(g.n), edges)
        independent = all(not (a in chosen and b in chosen) for a, b in edges)
        mis_bad += not (exact and independent and len(chosen) == _mis_by_search(g.n, edges))
    ok = match_bad == 0 and mis_bad == 0
    detail = f"matching 500 graphs, {match_bad} wrong; planar MIS 200 graphs, {mis_bad} wrong"
    return report(10, ok, detail, time.perf_counter() - start, 120)


ALL = [criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8, criterion9, criterion10]


@pytest.fixture(scope="module", autouse=True)
def _fresh_audit():
    reset_audit()
    yield


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    assert ALL[number - 1](), RESULTS[number][1]


if __name__ == "__main__":
    reset_audit()
    results = [run() for run in ALL]
    sys.exit(0 if all(results) else 1)
