"""Constant-factor approximation over the SPQR-tree.

P-nodes realize a maximum matching of the "free" cycles (those whose
realization costs no child anything); R-nodes realize an independent set of
free skeleton faces.  Tables reuse the exact module's ``Entry`` records so
the same reconstruction rebuilds a certificate.
"""

from __future__ import annotations

import time

import networkx as nx

from .cycles import interface_choices
from .decomp import R
from .exact import (
    INFEASIBLE,
    NEG_INF,
    DPContext,
    Entry,
    Table,
    _setup,
    _trivial,
    best_root_choice,
    finish,
    fix_interface,
    linear_order,
    rigid_faces,
    run_dp,
    _p_setup,
)
from .graph import Multigraph
from .solution import Solution

DEFAULT_EPSILON = 0.5
MIS_EXACT_LIMIT = 64


def max_matching(edges, nodes=()) -> set[tuple[int, int]]:
    """Maximum-cardinality matching of a simple graph (blossom algorithm)."""
    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    matching = nx.max_weight_matching(g, maxcardinality=True)
    return {(min(a, b), max(a, b)) for a, b in matching}


def _mis_exact(n: int, adj: list[int]) -> int:
    best_mask = 0
    best_size = 0

    def rec(cand: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        if cand == 0:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + cand.bit_count() <= best_size:
            return
        # a vertex of degree <= 1 inside the candidates can always be taken
        low_v, low_d = -1, n + 1
        high_v, high_d = -1, -1
        c = cand
        while c:
            bit = c & -c
            v = bit.bit_length() - 1
            c ^= bit
            d = (adj[v] & cand).bit_count()
            if d < low_d:
                low_v, low_d = v, d
            if d > high_d:
                high_v, high_d = v, d
        if low_d <= 1:
            rec(cand & ~adj[low_v] & ~(1 << low_v), chosen | 1 << low_v, size + 1)
            return
        v = high_v
        rec(cand & ~adj[v] & ~(1 << v), chosen | 1 << v, size + 1)
        rec(cand & ~(1 << v), chosen, size)

    rec((1 << n) - 1, 0, 0)
    return best_mask


def _mis_greedy(n: int, adj: list[int]) -> int:
    cand = (1 << n) - 1
    chosen = 0
    while cand:
        v = min(
            (v for v in range(n) if cand >> v & 1),
            key=lambda v: ((adj[v] & cand).bit_count(), v),
        )
        chosen |= 1 << v
        cand &= ~adj[v] & ~(1 << v)
    # 1-for-2 swaps: drop one chosen vertex, add two free ones
    improved = True
    while improved:
        improved = False
        for v in range(n):
            if not chosen >> v & 1:
                continue
            rest = chosen & ~(1 << v)
            free = [w for w in range(n) if not rest >> w & 1 and not adj[w] & rest and w != v]
            for i, a in enumerate(free):
                for b in free[i + 1 :]:
                    if not adj[a] >> b & 1:
                        chosen = rest | 1 << a | 1 << b
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
    return chosen


def mis_planar(nodes, edges, epsilon: float = DEFAULT_EPSILON, *, exact_limit: int = MIS_EXACT_LIMIT) -> tuple[list, bool]:
    """Independent set of a planar graph and whether it is provably maximum.

    Up to ``exact_limit`` vertices the set is a maximum one, which meets any
    (1 + epsilon/4) requirement; beyond it a greedy set with local swaps is
    returned and the second value is False.
    """
    nodes = sorted(nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    adj = [0] * len(nodes)
    for a, b in edges:
        if a == b:
            continue
        adj[pos[a]] |= 1 << pos[b]
        adj[pos[b]] |= 1 << pos[a]
    exact = len(nodes) <= exact_limit
    mask = _mis_exact(len(nodes), adj) if exact else _mis_greedy(len(nodes), adj)
    return [nodes[i] for i in range(len(nodes)) if mask >> i & 1], exact


class ApxContext(DPContext):
    def __init__(self, rt, idx, epsilon: float):
        super().__init__(rt, idx)
        self.epsilon = epsilon
        self.heuristic = False


def _free(ctx: DPContext, child: int, I: frozenset[int], c: int) -> bool:
    base = ctx.iface[child] & I
    return ctx.tval(child, base | {c}) == ctx.tval(child, base)


def apx_p(ctx: DPContext, mu: int) -> Table:
    rt = ctx.rt
    iface = ctx.iface[mu]
    child_at = dict(rt.children[mu])
    pool = sorted(c for c in ctx.idx.relevant[mu] if c not in iface)
    table = {}
    for I in interface_choices(ctx.idx.interface[mu]):
        setup = _p_setup(ctx, mu, I)
        base = ctx.child_sum(mu, I)
        if setup is None or base == NEG_INF:
            table[I] = INFEASIBLE
            continue
        edges, ends = setup
        k = len(edges)
        blocked = (min(ends), max(ends)) if len(ends) == 2 and k > 2 else None
        by_pair: dict[tuple[int, int], int] = {}
        for c in pool:
            a, b = ctx.pair_of(mu, c)
            key = (min(a, b), max(a, b))
            if key == blocked or key in by_pair:
                continue
            if _free(ctx, child_at[a], I, c) and _free(ctx, child_at[b], I, c):
                by_pair[key] = c
        matching = sorted(max_matching(by_pair, edges))
        chosen = tuple(sorted(by_pair[p] for p in matching))
        order = linear_order(edges, matching, ends)
        assert order is not None
        value = ctx.child_sum(mu, I.union(chosen)) + len(chosen)
        assert value == base + len(chosen)
        table[I] = Entry(value, chosen, order)
    return table


def apx_r(ctx: ApxContext, mu: int) -> Table:
    rt = ctx.rt
    rf = rigid_faces(ctx, mu)
    iface = ctx.iface[mu]
    children_of_face: dict[int, list[int]] = {}
    face_pairs = []
    for i, child in rt.children[mu]:
        f, g = rf.face_of[2 * i], rf.face_of[2 * i + 1]
        children_of_face.setdefault(f, []).append(child)
        children_of_face.setdefault(g, []).append(child)
        face_pairs.append((f, g))
    table = {}
    for I in interface_choices(ctx.idx.interface[mu]):
        fixed = fix_interface(rf, I)
        base = ctx.child_sum(mu, I)
        if fixed is None or base == NEG_INF:
            table[I] = INFEASIBLE
            continue
        pick: dict[int, int] = {}
        for f, cands in rf.candidates.items():
            if f in rf.parent_faces:
                continue
            for c in sorted(cands):
                if c in iface:
                    continue
                if all(_free(ctx, child, I, c) for child in children_of_face.get(f, ())):
                    pick[f] = c
                    break
        h_edges = [(f, g) for f, g in face_pairs if f in pick and g in pick]
        faces, exact = mis_planar(pick, h_edges, ctx.epsilon)
        if not exact:
            ctx.heuristic = True
        chosen = tuple(sorted(pick[f] for f in faces))
        value = ctx.child_sum(mu, I.union(chosen)) + len(chosen)
        assert value == base + len(chosen)
        table[I] = Entry(value, chosen)
    return table


def approx_tables(graph: Multigraph, cycles, epsilon: float = DEFAULT_EPSILON) -> ApxContext:
    cs, rt, idx = _setup(graph, cycles)
    ctx = ApxContext(rt, idx, epsilon)
    run_dp(ctx, apx_p, apx_r)
    return ctx


def approximate(graph: Multigraph, cycles, epsilon: float = DEFAULT_EPSILON) -> Solution:
    """Factor 2 without R-nodes, 4 + epsilon otherwise; the value is the certificate's recount."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    start = time.perf_counter()
    cs, rt, idx = _setup(graph, cycles)
    factor = 4.0 + epsilon if rt.tree.count(R) else 2.0
    if len(cs) == 0:
        sol = _trivial(graph, cs, "approx", "Theorem 9" if factor > 2 else "Theorem 7", start, rt)
        sol.factor = factor
        return sol
    ctx = ApxContext(rt, idx, epsilon)
    run_dp(ctx, apx_p, apx_r)
    value, top = best_root_choice(ctx)
    theorem = "Theorem 9" if factor > 2 else "Theorem 7"
    sol = finish(ctx, cs, value, top, "approx", theorem, start, factor, ctx.heuristic)
    assert len(sol.realized) >= value
    sol.stats["table_value"] = int(value)
    sol.value = len(sol.realized)
    return sol
