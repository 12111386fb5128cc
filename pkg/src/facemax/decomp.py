"""Planar embedding, SPQR-trees and composition of skeleton embeddings.

The SPQR-tree is built by repeated splitting at separation pairs followed by
merging adjacent bonds and adjacent polygons, which yields the canonical
(unique) tree.  Every real edge hangs off its skeleton as its own Q-node, so
tree leaves are always Q-nodes.

Skeleton darts follow the same encoding as graph darts: skeleton edge ``i``
stored as ``(u, v)`` has darts ``2*i`` (u -> v) and ``2*i + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping

import networkx as nx

from .errors import (
    Disconnected,
    NotBiconnected,
    NotPlanar,
    ParentEdgeNotExpandable,
)
from .graph import (
    Multigraph,
    RotationEmbedding,
    build_graph,
    face_walks,
    is_biconnected,
    is_connected,
    trace_faces,
)

S, P, R, Q = "S", "P", "R", "Q"


def planar_embed(graph: Multigraph) -> RotationEmbedding:
    """Planar rotation system of a connected multigraph; raises NotPlanar."""
    if not is_connected(graph):
        raise Disconnected("graph must be connected")
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    first: dict[frozenset[int], int] = {}
    for e, (u, v) in enumerate(graph.edges):
        key = frozenset((u, v))
        if key in first:
            g.add_edge(u, ("sub", e))
            g.add_edge(("sub", e), v)
        else:
            first[key] = e
            g.add_edge(u, v)
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NotPlanar("graph is not planar")
    rotation = []
    for v in range(graph.n):
        darts = []
        for w in emb.neighbors_cw_order(v):
            e = w[1] if isinstance(w, tuple) else first[frozenset((v, w))]
            darts.append(2 * e if graph.edges[e][0] == v else 2 * e + 1)
        rotation.append(tuple(darts))
    result = RotationEmbedding(tuple(rotation), 0 if graph.m else None)
    trace_faces(graph, result)
    return result


@dataclass
class SkeletonEdge:
    u: int
    v: int
    node: int | None = None  # tree neighbour this virtual edge stands for
    twin: int | None = None  # index of the matching edge in that neighbour's skeleton
    real: int | None = None  # graph edge id, only on the real edge of a Q-node

    def dart_from(self, index: int, x: int) -> int:
        return 2 * index if self.u == x else 2 * index + 1


@dataclass
class SPQRNode:
    kind: str
    edges: list[SkeletonEdge]

    @property
    def vertices(self) -> list[int]:
        seen: dict[int, None] = {}
        for e in self.edges:
            seen.setdefault(e.u)
            seen.setdefault(e.v)
        return list(seen)

    def neighbors(self) -> list[int]:
        return [e.node for e in self.edges if e.node is not None]


@dataclass
class SPQRTree:
    graph: Multigraph
    nodes: list[SPQRNode]
    q_of_edge: list[int]

    def count(self, kind: str) -> int:
        return sum(1 for nd in self.nodes if nd.kind == kind)

    @cached_property
    def rigid_rotations(self) -> dict[int, dict[int, list[int]]]:
        """Base planar embedding of every R-skeleton (unique up to mirror)."""
        out = {}
        for i, nd in enumerate(self.nodes):
            if nd.kind != R:
                continue
            verts = nd.vertices
            local = {v: k for k, v in enumerate(verts)}
            skel = build_graph(len(verts), [(local[e.u], local[e.v]) for e in nd.edges])
            emb = planar_embed(skel)
            out[i] = {verts[k]: list(emb.rotation[k]) for k in range(len(verts))}
        return out

    def skeleton_size(self) -> int:
        return sum(len(nd.edges) for nd in self.nodes if nd.kind != Q)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

# a piece edge is (u, v, label); label is ("r", edge id) or ("v", virtual id)
_PieceEdge = tuple[int, int, tuple[str, int]]


def _articulation_points(adj: Mapping[int, set[int]], removed: int) -> set[int]:
    verts = [v for v in adj if v != removed]
    if len(verts) < 3:
        return set()
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    points: set[int] = set()
    root = verts[0]
    timer = 0
    disc[root] = low[root] = 0
    stack = [(root, -1, iter(adj[root]))]
    root_children = 0
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == removed or w == parent:
                continue
            if w in disc:
                low[v] = min(low[v], disc[w])
            else:
                timer += 1
                disc[w] = low[w] = timer
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if p != root and low[v] >= disc[p]:
                points.add(p)
    if root_children > 1:
        points.add(root)
    return points


def _classes(edges: list[_PieceEdge], a: int, b: int) -> list[list[int]]:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        if u not in (a, b) and v not in (a, b):
            parent[find(u)] = find(v)
    singles: list[list[int]] = []
    groups: dict[int, list[int]] = {}
    for i, (u, v, _) in enumerate(edges):
        if {u, v} == {a, b}:
            singles.append([i])
        else:
            inner = u if u not in (a, b) else v
            groups.setdefault(find(inner), []).append(i)
    return list(groups.values()) + singles


def _find_split(edges: list[_PieceEdge]) -> tuple[int, int, list[list[int]]] | None:
    adj: dict[int, set[int]] = {}
    mult: dict[frozenset[int], int] = {}
    for u, v, _ in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
        key = frozenset((u, v))
        mult[key] = mult.get(key, 0) + 1
    if len(adj) <= 2:
        return None
    candidates: list[tuple[int, int]] = [tuple(sorted(k)) for k, c in mult.items() if c >= 2]
    seen = set(candidates)
    for a in sorted(adj):
        for b in sorted(_articulation_points(adj, a)):
            pair = (min(a, b), max(a, b))
            if pair not in seen:
                seen.add(pair)
                candidates.append(pair)
    for a, b in candidates:
        classes = _classes(edges, a, b)
        multi = [c for c in classes if len(c) >= 2]
        singles = [c for c in classes if len(c) == 1]
        if multi and (len(multi) >= 2 or len(multi) + len(singles) >= 3):
            return a, b, classes
    return None


def _split_components(graph: Multigraph) -> tuple[list[list[_PieceEdge]], int]:
    next_virtual = 0
    work = [[(u, v, ("r", e)) for e, (u, v) in enumerate(graph.edges)]]
    done = []
    while work:
        piece = work.pop()
        split = _find_split(piece)
        if split is None:
            done.append(piece)
            continue
        a, b, classes = split
        multi = [c for c in classes if len(c) >= 2]
        singles = [c for c in classes if len(c) == 1]
        if len(multi) == 2 and not singles:
            vid = next_virtual
            next_virtual += 1
            for c in multi:
                work.append([piece[i] for i in c] + [(a, b, ("v", vid))])
            continue
        bond = [piece[c[0]] for c in singles]
        for c in multi:
            vid = next_virtual
            next_virtual += 1
            work.append([piece[i] for i in c] + [(a, b, ("v", vid))])
            bond.append((a, b, ("v", vid)))
        done.append(bond)
    return done, next_virtual


def _kind_of(piece: list[_PieceEdge]) -> str:
    verts = {x for u, v, _ in piece for x in (u, v)}
    if len(verts) == 2:
        return P
    if len(piece) == len(verts):
        return S
    return R


def _merge(pieces: list[list[_PieceEdge]]) -> list[list[_PieceEdge]]:
    kinds = [_kind_of(p) for p in pieces]
    owners: dict[int, list[int]] = {}
    for i, piece in enumerate(pieces):
        for _, _, (tag, vid) in piece:
            if tag == "v":
                owners.setdefault(vid, []).append(i)
    parent = list(range(len(pieces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    dissolved = set()
    for vid, (i, j) in owners.items():
        if kinds[i] == kinds[j] and kinds[i] in (S, P):
            parent[find(i)] = find(j)
            dissolved.add(vid)
    merged: dict[int, list[_PieceEdge]] = {}
    for i, piece in enumerate(pieces):
        bucket = merged.setdefault(find(i), [])
        bucket.extend(e for e in piece if not (e[2][0] == "v" and e[2][1] in dissolved))
    return [merged[k] for k in sorted(merged)]


def _order_polygon(piece: list[_PieceEdge]) -> list[_PieceEdge]:
    incident: dict[int, list[int]] = {}
    for i, (u, v, _) in enumerate(piece):
        incident.setdefault(u, []).append(i)
        incident.setdefault(v, []).append(i)
    order = [0]
    prev = 0
    x = piece[0][1]
    while len(order) < len(piece):
        a, b = incident[x]
        nxt = b if a == prev else a
        order.append(nxt)
        u, v, _ = piece[nxt]
        x = v if u == x else u
        prev = nxt
    return [piece[i] for i in order]


def build_spqr(graph: Multigraph) -> SPQRTree:
    """Canonical (unrooted) SPQR-tree of a biconnected planar graph."""
    if not is_biconnected(graph):
        raise NotBiconnected("graph must be biconnected with at least 3 vertices")
    planar_embed(graph)
    pieces = _merge(_split_components(graph)[0])
    nodes: list[SPQRNode] = []
    where: dict[int, tuple[int, int]] = {}
    for piece in pieces:
        kind = _kind_of(piece)
        if kind == S:
            piece = _order_polygon(piece)
        nodes.append(SPQRNode(kind, [SkeletonEdge(u, v) for u, v, _ in piece]))
    q_of_edge = [-1] * graph.m
    for i, piece in enumerate(pieces):
        if nodes[i].kind == S:
            piece = _order_polygon(piece)
        for j, (u, v, (tag, ident)) in enumerate(piece):
            if tag == "v":
                if ident in where:
                    oi, oj = where[ident]
                    nodes[i].edges[j].node, nodes[i].edges[j].twin = oi, oj
                    nodes[oi].edges[oj].node, nodes[oi].edges[oj].twin = i, j
                else:
                    where[ident] = (i, j)
            else:
                q = len(nodes)
                nodes.append(SPQRNode(Q, [SkeletonEdge(u, v, node=i, twin=j), SkeletonEdge(u, v, real=ident)]))
                nodes[i].edges[j].node, nodes[i].edges[j].twin = q, 0
                q_of_edge[ident] = q
    return SPQRTree(graph, nodes, q_of_edge)


# ---------------------------------------------------------------------------
# rooting, pertinent graphs
# ---------------------------------------------------------------------------


@dataclass
class RootedSPQRTree:
    tree: SPQRTree
    root_edge: int
    root: int
    phi: int
    parent: list[int]
    parent_edge: list[int]
    children: list[list[tuple[int, int]]]
    order: list[int]  # top-down
    pert_mask: list[int]
    home: list[int]

    @property
    def graph(self) -> Multigraph:
        return self.tree.graph

    @property
    def nodes(self) -> list[SPQRNode]:
        return self.tree.nodes

    def kind(self, mu: int) -> str:
        return self.tree.nodes[mu].kind

    def poles(self, mu: int) -> tuple[int, int]:
        e = self.tree.nodes[mu].edges[self.parent_edge[mu]]
        return e.u, e.v

    def edge_mask(self, mu: int, index: int) -> int:
        """Real edges represented by skeleton edge ``index`` of ``mu``."""
        se = self.tree.nodes[mu].edges[index]
        if se.real is not None:
            return 1 << se.real
        if index == self.parent_edge[mu]:
            return self.graph.full_mask & ~self.pert_mask[mu]
        return self.pert_mask[se.node]

    def bottom_up(self) -> list[int]:
        return self.order[::-1]

    def subtree(self, mu: int) -> list[int]:
        out = [mu]
        i = 0
        while i < len(out):
            out.extend(c for _, c in self.children[out[i]])
            i += 1
        return out

    def child_via(self, mu: int, index: int) -> int:
        node = self.tree.nodes[mu].edges[index].node
        assert node is not None and self.parent[node] == mu
        return node


def root_at(tree: SPQRTree, edge: int) -> RootedSPQRTree:
    nodes = tree.nodes
    root = tree.q_of_edge[edge]
    k = len(nodes)
    parent = [-1] * k
    parent_edge = [-1] * k
    children: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    parent_edge[root] = 1
    order = [root]
    i = 0
    while i < len(order):
        mu = order[i]
        i += 1
        for idx, se in enumerate(nodes[mu].edges):
            if se.node is None or se.node == parent[mu]:
                continue
            child = se.node
            parent[child] = mu
            parent_edge[child] = se.twin
            children[mu].append((idx, child))
            order.append(child)
    pert = [0] * k
    for mu in reversed(order):
        nd = nodes[mu]
        if nd.kind == Q and mu != root:
            pert[mu] = 1 << nd.edges[1].real
        else:
            pert[mu] = 0
            for _, c in children[mu]:
                pert[mu] |= pert[c]
    pert[root] |= 1 << edge
    home = [-1] * tree.graph.n
    for mu in order:
        for x in nodes[mu].vertices:
            if home[x] == -1:
                home[x] = mu
    phi = children[root][0][1]
    return RootedSPQRTree(tree, edge, root, phi, parent, parent_edge, children, order, pert, home)


@dataclass(frozen=True)
class Pertinent:
    graph: Multigraph  # same vertex ids as the input graph; only pertinent edges
    edge_ids: tuple[int, ...]  # local edge -> input edge id
    poles: tuple[int, int]


def _mask_edges(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def pertinent(rt: RootedSPQRTree, mu: int) -> Pertinent:
    mask = rt.pert_mask[mu]
    if mu == rt.root:
        mask = rt.pert_mask[rt.phi]
    ids = _mask_edges(mask)
    g = rt.graph
    return Pertinent(Multigraph(g.n, tuple(g.edges[e] for e in ids)), tuple(ids), rt.poles(mu))


def expansion(rt: RootedSPQRTree, mu: int, index: int) -> Pertinent:
    if index == rt.parent_edge[mu]:
        raise ParentEdgeNotExpandable(f"skeleton edge {index} of node {mu} is its parent edge")
    return pertinent(rt, rt.child_via(mu, index))


# ---------------------------------------------------------------------------
# skeleton embeddings and composition
# ---------------------------------------------------------------------------


@dataclass
class EmbeddingChoice:
    """Per P-node the order of its non-parent skeleton edges; per R-node a flip bit."""

    p_orders: dict[int, tuple[int, ...]] = field(default_factory=dict)
    r_flips: dict[int, bool] = field(default_factory=dict)


def skeleton_rotation(rt: RootedSPQRTree, mu: int, choice: EmbeddingChoice) -> dict[int, list[int]]:
    """Clockwise skeleton darts per skeleton vertex of ``mu`` under ``choice``."""
    nd = rt.tree.nodes[mu]
    if nd.kind == P:
        x, y = rt.poles(mu)
        pe = rt.parent_edge[mu]
        order = choice.p_orders.get(mu)
        if order is None:
            order = tuple(i for i in range(len(nd.edges)) if i != pe)
        seq = [pe, *order]
        at_x = [nd.edges[i].dart_from(i, x) for i in seq]
        at_y = [nd.edges[i].dart_from(i, y) for i in [pe, *reversed(order)]]
        return {x: at_x, y: at_y}
    if nd.kind == R:
        base = rt.tree.rigid_rotations[mu]
        if choice.r_flips.get(mu, False):
            return {v: rot[::-1] for v, rot in base.items()}
        return {v: list(rot) for v, rot in base.items()}
    rot: dict[int, list[int]] = {}
    for i, e in enumerate(nd.edges):
        rot.setdefault(e.u, []).append(2 * i)
        rot.setdefault(e.v, []).append(2 * i + 1)
    return rot


def skeleton_faces(rotation: Mapping[int, list[int]]) -> tuple[list[list[int]], dict[int, int]]:
    """Face walks of a skeleton embedding and the face index of every skeleton dart."""
    walks = face_walks(rotation.values())
    face_of = {d: i for i, w in enumerate(walks) for d in w}
    return walks, face_of


def compose_embedding(rt: RootedSPQRTree, choice: EmbeddingChoice | None = None) -> RotationEmbedding:
    """Glue skeleton embeddings into a rotation system of the whole graph.

    A virtual edge at vertex ``x`` is replaced by the neighbour's rotation at
    ``x`` read from just after the twin edge.  The root edge ends up on the
    outer face.
    """
    choice = choice or EmbeddingChoice()
    rots = {mu: skeleton_rotation(rt, mu, choice) for mu in rt.order if rt.kind(mu) != Q}
    return RotationEmbedding(_compose(rt, rots), 2 * rt.root_edge)


def _compose(rt: RootedSPQRTree, rots: Mapping[int, Mapping[int, list[int]]]) -> tuple[tuple[int, ...], ...]:
    g = rt.graph
    nodes = rt.tree.nodes

    def expand(mu: int, x: int, start: list[int]) -> list[int]:
        out: list[int] = []
        # explicit stack of pending skeleton-dart sequences
        stack: list[tuple[int, list[int], int]] = [(mu, start, 0)]
        while stack:
            node, seq, pos = stack.pop()
            if pos >= len(seq):
                continue
            stack.append((node, seq, pos + 1))
            se = nodes[node].edges[seq[pos] >> 1]
            child = se.node
            cnd = nodes[child]
            if cnd.kind == Q:
                e = cnd.edges[1].real
                out.append(2 * e if g.edges[e][0] == x else 2 * e + 1)
                continue
            crot = rots[child][x]
            tdart = cnd.edges[se.twin].dart_from(se.twin, x)
            i = crot.index(tdart)
            stack.append((child, crot[i + 1 :] + crot[:i], 0))
        return out

    rotation: list[tuple[int, ...]] = []
    e0 = rt.root_edge
    phi = rt.phi
    phi_pe = rt.parent_edge[phi]
    for x in range(g.n):
        if x in g.edges[e0]:
            own = 2 * e0 if g.edges[e0][0] == x else 2 * e0 + 1
            if rt.kind(phi) == Q:
                rotation.append((own,))
                continue
            crot = rots[phi][x]
            tdart = nodes[phi].edges[phi_pe].dart_from(phi_pe, x)
            i = crot.index(tdart)
            rotation.append((own, *expand(phi, x, crot[i + 1 :] + crot[:i])))
            continue
        mu = rt.home[x]
        if mu == -1:
            rotation.append(())
            continue
        rotation.append(tuple(expand(mu, x, list(rots[mu][x]))))
    return tuple(rotation)


def count_choice_space(tree: SPQRTree) -> int:
    """Number of skeleton-choice vectors (before quotienting the global mirror)."""
    total = 1
    for nd in tree.nodes:
        if nd.kind == P:
            total *= math.factorial(len(nd.edges) - 1)
        elif nd.kind == R:
            total *= 2
    return total


def iter_nodes_of_kind(rt: RootedSPQRTree, kind: str) -> Iterator[int]:
    return (mu for mu in rt.order if rt.kind(mu) == kind)
