"""Multigraphs, rotation systems and faces.

Darts are plain integers: edge ``e`` stored as ``(u, v)`` yields dart
``2*e`` (u -> v) and ``2*e + 1`` (v -> u), so ``d ^ 1`` reverses a dart.
A rotation lists, per vertex, the darts leaving it in clockwise order.
Face tracing follows ``next(d) = successor of reverse(d)`` around the head
of ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    InvalidCycle,
    NonPlanarRotation,
    NotACycle,
    SelfLoop,
    VertexOutOfRange,
)


def reverse(dart: int) -> int:
    return dart ^ 1


def dart_of(edge: int, forward: bool = True) -> int:
    return 2 * edge + (0 if forward else 1)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``0..n-1`` with stable edge ids."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def tail(self, dart: int) -> int:
        return self.edges[dart >> 1][dart & 1]

    def head(self, dart: int) -> int:
        return self.edges[dart >> 1][1 - (dart & 1)]

    def other(self, edge: int, v: int) -> int:
        a, b = self.edges[edge]
        return b if v == a else a

    def out_darts(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            out[u].append(2 * e)
            out[v].append(2 * e + 1)
        return out

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def is_simple(self) -> bool:
        return len({frozenset(e) for e in self.edges}) == self.m

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if {a, b} == {u, v}]

    def to_networkx(self) -> nx.Graph:
        """Simple-graph view; parallel edges collapse."""
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Multigraph:
    edges = []
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


@dataclass(frozen=True)
class Cycle:
    """Simple cycle given by its cyclic vertex sequence and matching edge ids.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[i + 1]`` (cyclically).
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @property
    def mask(self) -> int:
        mask = 0
        for e in self.edges:
            mask |= 1 << e
        return mask

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def from_vertices(cls, graph: Multigraph, vertices: Sequence[int], *, min_length: int = 3) -> Cycle:
        verts = tuple(int(v) for v in vertices)
        if len(verts) < min_length:
            raise NotACycle(f"cycle {verts} shorter than {min_length}")
        if len(set(verts)) != len(verts):
            raise NotACycle(f"cycle {verts} repeats a vertex")
        lookup: dict[frozenset[int], list[int]] = {}
        for e, (a, b) in enumerate(graph.edges):
            lookup.setdefault(frozenset((a, b)), []).append(e)
        edges = []
        for i, v in enumerate(verts):
            w = verts[(i + 1) % len(verts)]
            if not (0 <= v < graph.n):
                raise NotACycle(f"vertex {v} not in graph")
            candidates = lookup.get(frozenset((v, w)), [])
            if not candidates:
                raise NotACycle(f"cycle {verts}: no edge between {v} and {w}")
            if len(candidates) > 1:
                raise NotACycle(f"cycle {verts}: edge {v}-{w} is ambiguous (parallel edges); give edge ids")
            edges.append(candidates[0])
        return cls(verts, tuple(edges))

    @classmethod
    def from_edges(cls, graph: Multigraph, edges: Sequence[int], *, min_length: int = 3) -> Cycle:
        edges = [int(e) for e in edges]
        if len(edges) < min_length or len(set(edges)) != len(edges):
            raise NotACycle(f"edge list {edges} is not a cycle")
        if any(not (0 <= e < graph.m) for e in edges):
            raise NotACycle(f"edge list {edges} references unknown edges")
        # order the edges by walking from the first one
        incident: dict[int, list[int]] = {}
        for e in edges:
            for x in graph.edges[e]:
                incident.setdefault(x, []).append(e)
        if any(len(es) != 2 for es in incident.values()):
            raise NotACycle(f"edge list {edges} is not a simple cycle")
        start_edge = edges[0]
        start = graph.edges[start_edge][0]
        verts = [start]
        ordered = [start_edge]
        v = graph.other(start_edge, start)
        prev = start_edge
        while v != start:
            verts.append(v)
            a, b = incident[v]
            nxt = b if a == prev else a
            ordered.append(nxt)
            prev = nxt
            v = graph.other(nxt, v)
        if len(ordered) != len(edges):
            raise NotACycle(f"edge list {edges} is not connected")
        return cls(tuple(verts), tuple(ordered))


@dataclass(frozen=True)
class RotationEmbedding:
    """Clockwise dart order per vertex plus the outer face (named by a dart on it)."""

    rotation: tuple[tuple[int, ...], ...]
    outer_dart: int | None = None

    def mirror(self) -> RotationEmbedding:
        return RotationEmbedding(
            tuple(tuple(reversed(r)) for r in self.rotation),
            None if self.outer_dart is None else self.outer_dart ^ 1,
        )


@dataclass(frozen=True)
class Face:
    darts: tuple[int, ...]
    graph: Multigraph = field(repr=False, compare=False)

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(d >> 1 for d in self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self.graph.tail(d) for d in self.darts)

    @property
    def mask(self) -> int:
        mask = 0
        for d in self.darts:
            mask |= 1 << (d >> 1)
        return mask

    def is_simple(self) -> bool:
        verts = self.vertices
        return len(set(verts)) == len(verts)


def face_walks(rotation: Iterable[Sequence[int]]) -> list[list[int]]:
    """Partition darts into face walks for any rotation system.

    ``rotation`` yields, per vertex, its outgoing darts in clockwise order.
    Works on skeletons as well as on full graphs since only dart ids matter.
    """
    succ: dict[int, int] = {}
    for darts in rotation:
        k = len(darts)
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % k]
    walks = []
    seen: set[int] = set()
    for d0 in succ:
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            try:
                d = succ[d ^ 1]
            except KeyError:
                raise NonPlanarRotation(f"dart {d ^ 1} missing from the rotation") from None
        if d != d0:
            raise NonPlanarRotation("rotation is not a permutation of darts")
        walks.append(walk)
    return walks


def _check_rotation(graph: Multigraph, emb: RotationEmbedding) -> None:
    if len(emb.rotation) != graph.n:
        raise NonPlanarRotation(f"rotation has {len(emb.rotation)} vertices, graph has {graph.n}")
    seen = set()
    for v, darts in enumerate(emb.rotation):
        for d in darts:
            if not (0 <= d < 2 * graph.m) or graph.tail(d) != v:
                raise NonPlanarRotation(f"dart {d} listed at vertex {v} is not leaving it")
            if d in seen:
                raise NonPlanarRotation(f"dart {d} listed twice")
            seen.add(d)
    if len(seen) != 2 * graph.m:
        raise NonPlanarRotation("rotation does not list every dart")


def euler_genus(graph: Multigraph, n_faces: int) -> int:
    """Genus implied by a face count, for a connected graph (isolated vertices ignored)."""
    active = len({x for e in graph.edges for x in e}) if graph.m else graph.n
    chi = active - graph.m + n_faces
    return (2 - chi) // 2


def trace_faces(graph: Multigraph, emb: RotationEmbedding, *, check: bool = True) -> list[Face]:
    if check:
        _check_rotation(graph, emb)
    walks = face_walks(emb.rotation)
    if check and euler_genus(graph, len(walks)) != 0:
        raise NonPlanarRotation(
            f"{len(walks)} faces for n={graph.n}, m={graph.m}: rotation has positive genus"
        )
    return [Face(tuple(w), graph) for w in walks]


def face_masks(emb: RotationEmbedding) -> list[int]:
    """Edge bitmask of every face; the fast path used by the oracle."""
    masks = []
    for walk in face_walks(emb.rotation):
        mask = 0
        for d in walk:
            mask |= 1 << (d >> 1)
        masks.append(mask)
    return masks


def _check_cycle_in_graph(graph: Multigraph, cycle: Cycle) -> None:
    if len(cycle.vertices) != len(cycle.edges) or len(cycle.edges) < 2:
        raise InvalidCycle("malformed cycle")
    for i, e in enumerate(cycle.edges):
        if not (0 <= e < graph.m):
            raise InvalidCycle(f"edge {e} not in graph")
        a, b = cycle.vertices[i], cycle.vertices[(i + 1) % len(cycle.vertices)]
        if {a, b} != set(graph.edges[e]):
            raise InvalidCycle(f"edge {e} does not join {a} and {b}")


def is_facial(graph: Multigraph, emb: RotationEmbedding, cycle: Cycle) -> bool:
    _check_cycle_in_graph(graph, cycle)
    target = cycle.mask
    return any(mask == target for mask in face_masks(emb))


def facial_cycles(graph: Multigraph, emb: RotationEmbedding, cycles: Sequence[Cycle]) -> list[int]:
    """Indices of the cycles that bound some face of ``emb``."""
    masks = set(face_masks(emb))
    return [i for i, c in enumerate(cycles) if c.mask in masks]


def dual(graph: Multigraph, emb: RotationEmbedding) -> tuple[Multigraph, list[Face]]:
    """Planar dual: dual vertex ``i`` is ``faces[i]``; dual edge ``e`` crosses primal edge ``e``."""
    faces = trace_faces(graph, emb)
    face_of = {}
    for i, f in enumerate(faces):
        for d in f.darts:
            face_of[d] = i
    return build_graph(len(faces), [(face_of[2 * e], face_of[2 * e + 1]) for e in range(graph.m)]), faces


def is_connected(graph: Multigraph) -> bool:
    if graph.n == 0:
        return False
    return nx.is_connected(graph.to_networkx())


def is_biconnected(graph: Multigraph) -> bool:
    if graph.n < 3 or not is_connected(graph):
        return False
    return not any(True for _ in nx.articulation_points(graph.to_networkx()))
