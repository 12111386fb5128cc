"""Dynamic programs over the rooted SPQR-tree.

``T[mu][I]`` is the largest number of cycles bounding faces of pert(mu) that
avoid the parent edge, over embeddings of pert(mu) in which the cycles of
``I`` bound the two faces flanking the parent edge.  Entries are ``Entry``
records: the value plus what is needed to rebuild the skeleton embedding.

Sides: for a node with poles (u, v) stored as its parent edge, the "+" side
is the face of skel(mu) holding the parent dart u -> v.  Gluing a child into
its parent merges the parent face holding dart ``2*i`` of skeleton edge
``i`` with the child's "-" face and the face holding ``2*i + 1`` with the
child's "+" face.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .cycles import CycleIndex, CycleSet, interface_choices, validate
from .decomp import (
    P,
    Q,
    R,
    S,
    EmbeddingChoice,
    RootedSPQRTree,
    build_spqr,
    compose_embedding,
    root_at,
    skeleton_faces,
    skeleton_rotation,
)
from .errors import HasRNode, PreconditionViolated
from .graph import Multigraph, face_walks
from .solution import Solution

NEG_INF = -math.inf


@dataclass(frozen=True)
class Entry:
    value: float
    chosen: tuple[int, ...] = ()  # cycles realized on faces of skel(mu) away from the parent edge
    order: tuple[int, ...] | None = None  # P-nodes: child skeleton edges in rotation order at u

    @property
    def feasible(self) -> bool:
        return self.value != NEG_INF


INFEASIBLE = Entry(NEG_INF)
Table = dict  # frozenset[int] -> Entry


class DPContext:
    """Rooted tree, cycle index and the tables filled so far."""

    def __init__(self, rt: RootedSPQRTree, idx: CycleIndex):
        self.rt = rt
        self.idx = idx
        self.tables: dict[int, Table] = {}
        self.iface = [frozenset(x) for x in idx.interface]

    def tval(self, child: int, cycles: Iterable[int]) -> float:
        key = self.iface[child].intersection(cycles)
        if len(key) > 2:
            return NEG_INF
        return self.tables[child][key].value

    def child_sum(self, mu: int, cycles: frozenset[int] | set[int]) -> float:
        total = 0.0
        for _, child in self.rt.children[mu]:
            total += self.tval(child, cycles)
            if total == NEG_INF:
                return NEG_INF
        return total

    def pair_of(self, mu: int, cid: int) -> tuple[int, ...]:
        """Non-parent skeleton edges of ``mu`` used by cycle ``cid``."""
        pe = self.rt.parent_edge[mu]
        return tuple(i for i in self.idx.proj[mu][cid] if i != pe)


# ---------------------------------------------------------------------------
# Q and S nodes
# ---------------------------------------------------------------------------


def dp_q(ctx: DPContext, mu: int) -> Table:
    return {I: Entry(0) for I in interface_choices(ctx.idx.interface[mu])}


def dp_s(ctx: DPContext, mu: int) -> Table:
    table = {}
    for I in interface_choices(ctx.idx.interface[mu]):
        for _, child in ctx.rt.children[mu]:
            assert I <= ctx.iface[child], "a cycle through an S-node's parent edge passes every child"
        table[I] = Entry(ctx.child_sum(mu, I))
    return table


# ---------------------------------------------------------------------------
# P nodes
# ---------------------------------------------------------------------------


def linear_order(nodes: Sequence[int], pairs: Iterable[tuple[int, int]], ends: Sequence[int]) -> tuple[int, ...] | None:
    """Order ``nodes`` on a line so every pair is consecutive and ``ends`` sit at the ends.

    Returns None when no such order exists.  With two ends the first one is
    placed first and the second one last.
    """
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    seen = set()
    for a, b in pairs:
        key = (min(a, b), max(a, b))
        if a == b or key in seen:
            return None
        seen.add(key)
        adj[a].append(b)
        adj[b].append(a)
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    if len(ends) == 2 and ends[0] == ends[1]:
        return None
    if any(len(adj[e]) > 1 for e in ends):
        return None
    comp_of: dict[int, int] = {}
    paths: list[list[int]] = []
    for v in nodes:
        if v in comp_of or len(adj[v]) > 1:
            continue
        path = [v]
        comp_of[v] = len(paths)
        prev, cur = None, v
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
            comp_of[cur] = len(paths)
        paths.append(path)
    if len(comp_of) != len(nodes):
        return None  # some component is a cycle
    first: list[int] = []
    last: list[int] = []
    used = set()
    if ends:
        c0 = comp_of[ends[0]]
        first = paths[c0] if paths[c0][0] == ends[0] else paths[c0][::-1]
        used.add(c0)
    if len(ends) == 2:
        c1 = comp_of[ends[1]]
        if c1 in used:
            if len(paths[c1]) != len(nodes):
                return None
            return tuple(first)
        last = paths[c1] if paths[c1][-1] == ends[1] else paths[c1][::-1]
        used.add(c1)
    middle = [v for c, p in enumerate(paths) if c not in used for v in p]
    return tuple(first + middle + last)


def _p_setup(ctx: DPContext, mu: int, I: frozenset[int]) -> tuple[list[int], list[int]] | None:
    """Child edges of ``mu`` and the ends forced by ``I`` (None if unrealizable)."""
    edges = [i for i, _ in ctx.rt.children[mu]]
    ends = []
    for cid in sorted(I):
        (edge,) = ctx.pair_of(mu, cid)
        ends.append(edge)
    if len(ends) == 2 and ends[0] == ends[1]:
        return None
    return edges, ends


def eval_f(ctx: DPContext, mu: int, chosen: Sequence[int], I: frozenset[int]) -> tuple[float, tuple[int, ...] | None]:
    """|chosen| together with a witness order, or -inf when no skeleton embedding fits."""
    setup = _p_setup(ctx, mu, I)
    if setup is None:
        return NEG_INF, None
    edges, ends = setup
    order = linear_order(edges, [ctx.pair_of(mu, c) for c in chosen], ends)
    if order is None:
        return NEG_INF, None
    return float(len(chosen)), order


def dp_p(ctx: DPContext, mu: int, r: int | None = None) -> Table:
    """Enumerate every set of non-interface relevant cycles to realize between children."""
    iface = ctx.iface[mu]
    pool = [c for c in ctx.idx.relevant[mu] if c not in iface]
    if r is not None and len(ctx.idx.relevant[mu]) > r + 1:
        raise PreconditionViolated(f"P-node {mu} has {len(ctx.idx.relevant[mu])} relevant cycles, more than r+1={r + 1}")
    subsets = []
    for bits in range(1 << len(pool)):
        subsets.append(tuple(pool[i] for i in range(len(pool)) if bits >> i & 1))
    subsets.sort(key=lambda s: (len(s), s))
    table = {}
    for I in interface_choices(ctx.idx.interface[mu]):
        best = INFEASIBLE
        best_key = None
        for chosen in subsets:
            f, order = eval_f(ctx, mu, chosen, I)
            if f == NEG_INF:
                continue
            value = ctx.child_sum(mu, I.union(chosen))
            if value == NEG_INF:
                continue
            value += f
            key = tuple(sorted(chosen))
            if value > best.value or (value == best.value and best_key is not None and key < best_key):
                best, best_key = Entry(value, key, order), key
        table[I] = best
    return table


def check_p_sharing(ctx: DPContext, mu: int, q_edge: int | None) -> None:
    """Two relevant cycles may share only the Q-child's skeleton edge."""
    rel = ctx.idx.relevant[mu]
    for a in range(len(rel)):
        ea = set(ctx.pair_of(mu, rel[a]))
        for b in range(a + 1, len(rel)):
            shared = ea.intersection(ctx.pair_of(mu, rel[b]))
            if shared and shared != {q_edge}:
                raise PreconditionViolated(
                    f"cycles {rel[a]} and {rel[b]} share skeleton edges {sorted(shared)} at P-node {mu}"
                )


def dp_p_two_shared(ctx: DPContext, mu: int) -> Table:
    """P-node rule for series-parallel inputs whose cycles pairwise share at most two vertices.

    Cycles avoiding the Q-child are pairwise edge-disjoint in the skeleton, so
    each is taken when its gain is positive; at most two cycles can flank the
    Q-child's edge, so the best ones are taken up to that capacity.
    """
    rt = ctx.rt
    q_edge = next((i for i, c in rt.children[mu] if rt.kind(c) == Q), None)
    check_p_sharing(ctx, mu, q_edge)
    iface = ctx.iface[mu]
    pool = [c for c in ctx.idx.relevant[mu] if c not in iface]
    child_at = dict(rt.children[mu])
    table = {}
    for I in interface_choices(ctx.idx.interface[mu]):
        setup = _p_setup(ctx, mu, I)
        base = ctx.child_sum(mu, I)
        if setup is None or base == NEG_INF:
            table[I] = INFEASIBLE
            continue
        edges, ends = setup
        free, on_q = [], []
        for c in pool:
            gain = 1.0
            for e in ctx.pair_of(mu, c):
                child = child_at[e]
                gain += ctx.tval(child, I | {c}) - ctx.tval(child, I)
            if gain > 0:
                (on_q if q_edge in ctx.pair_of(mu, c) else free).append((gain, c))
        cap = 2 - sum(1 for e in ends if e == q_edge)
        on_q.sort(key=lambda gc: (-gc[0], gc[1]))
        chosen = tuple(sorted([c for _, c in free] + [c for _, c in on_q[:cap]]))
        order = linear_order(edges, [ctx.pair_of(mu, c) for c in chosen], ends)
        assert order is not None, "cycles through the Q-child edge admit every greedy choice"
        value = ctx.child_sum(mu, I.union(chosen)) + len(chosen)
        assert value == base + sum(g for g, c in free) + sum(g for g, c in on_q[:cap])
        table[I] = Entry(value, chosen, order)
    return table


# ---------------------------------------------------------------------------
# R nodes
# ---------------------------------------------------------------------------


@dataclass
class RigidFaces:
    walks: list[list[int]]
    face_of: dict[int, int]
    by_edges: dict[frozenset[int], int]
    parent_faces: tuple[int, int]
    candidates: dict[int, list[int]]  # face -> cycles projecting onto it


def rigid_faces(ctx: DPContext, mu: int) -> RigidFaces:
    rt = ctx.rt
    rot = skeleton_rotation(rt, mu, EmbeddingChoice())
    walks, face_of = skeleton_faces(rot)
    by_edges = {frozenset(d >> 1 for d in w): f for f, w in enumerate(walks)}
    pe = rt.parent_edge[mu]
    cands: dict[int, list[int]] = {}
    for cid in ctx.idx.relevant[mu]:
        f = by_edges.get(frozenset(ctx.idx.proj[mu][cid]))
        if f is not None:
            cands.setdefault(f, []).append(cid)
    return RigidFaces(walks, face_of, by_edges, (face_of[2 * pe], face_of[2 * pe + 1]), cands)


def fix_interface(rf: RigidFaces, I: frozenset[int]) -> dict[int, int] | None:
    """Parent face -> cycle of I, or None if I cannot sit on the parent faces."""
    fixed: dict[int, int] = {}
    for cid in sorted(I):
        f = next((f for f in rf.parent_faces if cid in rf.candidates.get(f, ())), None)
        if f is None or f in fixed:
            return None
        fixed[f] = cid
    return fixed


def _solve_pairwise(
    variables: list[int],
    domains: Mapping[int, list],
    unary: Mapping[int, Callable],
    pair_terms: Mapping[tuple[int, int], list[Callable]],
    component_limit: int = 200000,
) -> tuple[float, dict[int, object]]:
    """Maximize a sum of unary and pairwise terms over small discrete domains.

    Components that are paths or cycles are solved by chain dynamic
    programming; other components by exhaustive search if small enough.
    """
    nbrs: dict[int, set[int]] = {v: set() for v in variables}
    for a, b in pair_terms:
        nbrs[a].add(b)
        nbrs[b].add(a)

    def pair_val(a, xa, b, xb) -> float:
        total = 0.0
        for fn in pair_terms.get((a, b), ()):
            total += fn(xa, xb)
        for fn in pair_terms.get((b, a), ()):
            total += fn(xb, xa)
        return total

    seen: set[int] = set()
    total = 0.0
    assignment: dict[int, object] = {}
    for v0 in variables:
        if v0 in seen:
            continue
        comp = [v0]
        seen.add(v0)
        i = 0
        while i < len(comp):
            for w in sorted(nbrs[comp[i]]):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        n_edges = sum(len(nbrs[v]) for v in comp) // 2
        if all(len(nbrs[v]) <= 2 for v in comp):
            if n_edges == len(comp) - 1:
                ends = [v for v in comp if len(nbrs[v]) <= 1]
                chain = _walk(ends[0], nbrs, len(comp))
                val, assign = _chain_dp(chain, domains, unary, pair_val, closed=False)
            else:
                chain = _walk(comp[0], nbrs, len(comp))
                val, assign = _chain_dp(chain, domains, unary, pair_val, closed=True)
        else:
            size = math.prod(len(domains[v]) for v in comp)
            if size > component_limit:
                raise PreconditionViolated(
                    f"candidate faces form a component with a vertex of degree > 2 ({size} assignments)"
                )
            val, assign = NEG_INF, None
            for combo in product(*(domains[v] for v in comp)):
                cur = dict(zip(comp, combo))
                s = sum(unary[v](cur[v]) for v in comp)
                for a in comp:
                    for b in nbrs[a]:
                        if a < b:
                            s += pair_val(a, cur[a], b, cur[b])
                if s > val:
                    val, assign = s, cur
        if val == NEG_INF:
            return NEG_INF, {}
        total += val
        assignment.update(assign)
    return total, assignment


def _walk(start: int, nbrs, length: int) -> list[int]:
    chain = [start]
    prev = None
    while len(chain) < length:
        nxt = min(w for w in nbrs[chain[-1]] if w != prev and w not in chain[-2:-1])
        prev = chain[-1]
        chain.append(nxt)
    return chain


def _chain_dp(chain, domains, unary, pair_val, *, closed: bool):
    first = chain[0]
    starts = domains[first] if closed else [None]
    best_val, best_assign = NEG_INF, None
    for fixed in starts:
        # layer over values of chain[i]: value -> (score, back)
        layers = []
        dom0 = [fixed] if closed else domains[first]
        layer = {x: (unary[first](x), None) for x in dom0}
        layers.append(layer)
        for pos in range(1, len(chain)):
            v, u = chain[pos], chain[pos - 1]
            new = {}
            for x in domains[v]:
                best = (NEG_INF, None)
                for y, (score, _) in layer.items():
                    s = score + pair_val(u, y, v, x)
                    if s > best[0]:
                        best = (s, y)
                new[x] = (best[0] + unary[v](x), best[1])
            layer = new
            layers.append(layer)
        end_val, end_x = NEG_INF, None
        for x, (score, _) in layer.items():
            if closed and len(chain) > 2:
                score += pair_val(chain[-1], x, first, fixed)
            if score > end_val:
                end_val, end_x = score, x
        if end_val > best_val:
            assign = {}
            x = end_x
            for pos in range(len(chain) - 1, -1, -1):
                assign[chain[pos]] = x
                x = layers[pos][x][1]
            best_val, best_assign = end_val, assign
    return best_val, best_assign


def r_objective(ctx: DPContext, mu: int, rf: RigidFaces, fixed: Mapping[int, int], I: frozenset[int]):
    """Variables, domains and terms of the R-node maximization for interface choice ``I``."""
    rt = ctx.rt
    iface = ctx.iface[mu]
    variables = sorted(
        f for f, cs in rf.candidates.items()
        if f not in rf.parent_faces and any(c not in iface for c in cs)
    )
    domains = {f: [None] + sorted(c for c in rf.candidates[f] if c not in iface) for f in variables}
    varset = set(variables)
    unary_parts: dict[int, list[Callable]] = {f: [lambda x: 0.0 if x is None else 1.0] for f in variables}
    pair_terms: dict[tuple[int, int], list[Callable]] = {}
    const = 0.0
    for idx_edge, child in rt.children[mu]:
        f, g = rf.face_of[2 * idx_edge], rf.face_of[2 * idx_edge + 1]

        def term(xf, xg, child=child):
            return ctx.tval(child, {x for x in (xf, xg) if x is not None})

        fv, gv = f in varset, g in varset
        if fv and gv:
            pair_terms.setdefault((f, g), []).append(term)
        elif fv:
            xg = fixed.get(g)
            unary_parts[f].append(lambda x, term=term, xg=xg: term(x, xg))
        elif gv:
            xf = fixed.get(f)
            unary_parts[g].append(lambda x, term=term, xf=xf: term(xf, x))
        else:
            const += term(fixed.get(f), fixed.get(g))
    unary = {f: (lambda x, parts=parts: sum(p(x) for p in parts)) for f, parts in unary_parts.items()}
    return variables, domains, unary, pair_terms, const


def r_gain(ctx: DPContext, mu: int, chosen: Iterable[int], I: frozenset[int]) -> float:
    """Change in value from realizing ``chosen`` on top of ``I`` (cycles on distinct faces)."""
    chosen = set(chosen)
    base = ctx.child_sum(mu, I)
    return ctx.child_sum(mu, I | chosen) - base + len(chosen - ctx.iface[mu])


def dp_r(ctx: DPContext, mu: int) -> Table:
    rf = rigid_faces(ctx, mu)
    table = {}
    for I in interface_choices(ctx.idx.interface[mu]):
        fixed = fix_interface(rf, I)
        if fixed is None:
            table[I] = INFEASIBLE
            continue
        variables, domains, unary, pair_terms, const = r_objective(ctx, mu, rf, fixed, I)
        if const == NEG_INF:
            table[I] = INFEASIBLE
            continue
        val, assign = _solve_pairwise(variables, domains, unary, pair_terms)
        if val == NEG_INF:
            table[I] = INFEASIBLE
            continue
        chosen = tuple(sorted(c for c in assign.values() if c is not None))
        value = const + val
        assert value == ctx.child_sum(mu, I.union(chosen)) + len(chosen)
        table[I] = Entry(value, chosen)
    return table


# ---------------------------------------------------------------------------
# driver and reconstruction
# ---------------------------------------------------------------------------


def run_dp(ctx: DPContext, p_rule: Callable[[DPContext, int], Table], r_rule: Callable[[DPContext, int], Table] | None) -> None:
    rt = ctx.rt
    for mu in rt.bottom_up():
        if mu == rt.root:
            continue
        kind = rt.kind(mu)
        if kind == Q:
            ctx.tables[mu] = dp_q(ctx, mu)
        elif kind == S:
            ctx.tables[mu] = dp_s(ctx, mu)
        elif kind == P:
            ctx.tables[mu] = p_rule(ctx, mu)
        else:
            if r_rule is None:
                raise HasRNode(f"node {mu} is an R-node")
            ctx.tables[mu] = r_rule(ctx, mu)


def best_root_choice(ctx: DPContext) -> tuple[float, frozenset[int]]:
    phi = ctx.rt.phi
    best, best_I = NEG_INF, frozenset()
    for I in interface_choices(ctx.idx.interface[phi]):
        entry = ctx.tables[phi][I]
        if entry.value == NEG_INF:
            continue
        value = len(I) + entry.value
        if value > best:
            best, best_I = value, I
    return best, best_I


def reconstruct(ctx: DPContext, top: frozenset[int]) -> EmbeddingChoice:
    """Walk down from the root child, fixing P-orders and R-flips so that the
    cycles each node promised to realize land on the promised sides."""
    rt = ctx.rt
    choice = EmbeddingChoice()
    items = sorted(top)
    stack: list[tuple[int, dict[int, int]]] = [(rt.phi, {c: (1 if k == 0 else -1) for k, c in enumerate(items)})]
    while stack:
        mu, want = stack.pop()
        kind = rt.kind(mu)
        if kind == Q:
            continue
        entry = ctx.tables[mu][frozenset(want)]
        assert entry.feasible, f"node {mu} asked for an unrealizable interface {sorted(want)}"
        pe = rt.parent_edge[mu]
        if kind == P:
            choice.p_orders[mu] = entry.order
        rot = skeleton_rotation(rt, mu, choice)
        walks, face_of = skeleton_faces(rot)
        plus = face_of[2 * pe]
        at_face: dict[int, int] = {}
        if kind == S:
            minus = face_of[2 * pe + 1]
            for c, sign in want.items():
                at_face[plus if sign > 0 else minus] = c
        else:
            by_edges = {frozenset(d >> 1 for d in w): f for f, w in enumerate(walks)}
            signs = []
            for c, sign in want.items():
                f = by_edges[frozenset(ctx.idx.proj[mu][c])]
                signs.append((1 if f == plus else -1) == sign)
            assert len(set(signs)) <= 1, "interface cycles must agree on the orientation"
            if signs and not signs[0]:
                if kind == P:
                    choice.p_orders[mu] = tuple(reversed(entry.order))
                else:
                    choice.r_flips[mu] = True
                rot = skeleton_rotation(rt, mu, choice)
                walks, face_of = skeleton_faces(rot)
                by_edges = {frozenset(d >> 1 for d in w): f for f, w in enumerate(walks)}
            for c in list(want) + list(entry.chosen):
                at_face[by_edges[frozenset(ctx.idx.proj[mu][c])]] = c
        for i, child in rt.children[mu]:
            sub = {}
            c = at_face.get(face_of[2 * i])
            if c is not None:
                sub[c] = -1
            c = at_face.get(face_of[2 * i + 1])
            if c is not None:
                sub[c] = 1
            stack.append((child, sub))
    return choice


def finish(ctx: DPContext, cs: CycleSet, value: float, top: frozenset[int], mode: str, theorem: str, start: float, factor: float = 1.0, heuristic: bool = False) -> Solution:
    choice = reconstruct(ctx, top)
    emb = compose_embedding(ctx.rt, choice)
    walks = face_walks(emb.rotation)
    g = ctx.rt.graph
    assert len(walks) == g.m - g.n + 2, "composed embedding fails the Euler check"
    masks = set()
    for w in walks:
        mask = 0
        for d in w:
            mask |= 1 << (d >> 1)
        masks.add(mask)
    realized = tuple(i for i, m in enumerate(cs.masks) if m in masks)
    return Solution(int(value), emb, realized, mode, factor, theorem, time.perf_counter() - start, heuristic)


def _trivial(graph: Multigraph, cs: CycleSet, mode: str, theorem: str, start: float, rt=None) -> Solution:
    rt = rt or root_at(build_spqr(graph), 0)
    emb = compose_embedding(rt)
    return Solution(0, emb, (), mode, 1.0, theorem, time.perf_counter() - start)


def _setup(graph: Multigraph, cycles) -> tuple[CycleSet, RootedSPQRTree, CycleIndex]:
    cs = cycles if isinstance(cycles, CycleSet) else validate(graph, cycles)
    rt = root_at(build_spqr(graph), 0)
    return cs, rt, CycleIndex(rt, cs)


def check_interface_size(idx: CycleIndex) -> None:
    for mu, iface in enumerate(idx.interface):
        if len(iface) > 3:
            raise AssertionError(f"node {mu} has {len(iface)} interface cycles under the 2-intersection hypothesis")


def exact_tables(graph: Multigraph, cycles, *, check: bool = True) -> DPContext:
    """Fill every table with the general rules (bitmask P-nodes, chain R-nodes)."""
    cs, rt, idx = _setup(graph, cycles)
    if check:
        if cs.max_multi_intersections() > 2:
            raise PreconditionViolated("some cycle shares two or more vertices with more than two others")
        check_interface_size(idx)
    ctx = DPContext(rt, idx)
    run_dp(ctx, dp_p, dp_r)
    return ctx


def solve_exact(graph: Multigraph, cycles, *, check: bool = True) -> Solution:
    """Optimum when every cycle meets at most two others in more than one vertex."""
    start = time.perf_counter()
    cs, rt, idx = _setup(graph, cycles)
    if len(cs) == 0:
        return _trivial(graph, cs, "exact", "Theorem 5", start, rt)
    if check:
        if cs.max_multi_intersections() > 2:
            raise PreconditionViolated("some cycle shares two or more vertices with more than two others")
        check_interface_size(idx)
    ctx = DPContext(rt, idx)
    run_dp(ctx, dp_p, dp_r)
    value, top = best_root_choice(ctx)
    sol = finish(ctx, cs, value, top, "exact", "Theorem 5", start)
    assert len(sol.realized) == sol.value, "certificate does not realize the computed optimum"
    return sol


def solve_sp_fpt(graph: Multigraph, cycles, r: int | None = None) -> Solution:
    """Optimum for series-parallel graphs, exponential only in ``r``."""
    start = time.perf_counter()
    cs, rt, idx = _setup(graph, cycles)
    if rt.tree.count(R):
        raise HasRNode("graph is not series-parallel (its SPQR-tree has an R-node)")
    actual = cs.max_multi_intersections()
    if r is not None and actual > r:
        raise PreconditionViolated(f"a cycle shares two or more vertices with {actual} others, more than r={r}")
    if len(cs) == 0:
        return _trivial(graph, cs, "sp-fpt", "Theorem 4", start, rt)
    ctx = DPContext(rt, idx)
    run_dp(ctx, lambda c, mu: dp_p(c, mu, actual), None)
    value, top = best_root_choice(ctx)
    sol = finish(ctx, cs, value, top, "sp-fpt", "Theorem 4", start)
    assert len(sol.realized) == sol.value
    return sol


def solve_sp_two_shared(graph: Multigraph, cycles) -> Solution:
    """Optimum for series-parallel graphs whose cycles pairwise share at most two vertices."""
    start = time.perf_counter()
    cs, rt, idx = _setup(graph, cycles)
    if rt.tree.count(R):
        raise HasRNode("graph is not series-parallel (its SPQR-tree has an R-node)")
    if cs.max_pairwise_shared() > 2:
        raise PreconditionViolated("two cycles share more than two vertices")
    if len(cs) == 0:
        return _trivial(graph, cs, "sp-two-shared", "Theorem 6", start, rt)
    ctx = DPContext(rt, idx)
    run_dp(ctx, dp_p_two_shared, None)
    value, top = best_root_choice(ctx)
    sol = finish(ctx, cs, value, top, "sp-two-shared", "Theorem 6", start)
    assert len(sol.realized) == sol.value
    return sol
