"""Cycle sets, projections into skeletons, interface sets and the all-facial gadget test."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .decomp import RootedSPQRTree, planar_embed
from .errors import DuplicateCycle, InvalidCycle, NotPlanar
from .graph import Cycle, Multigraph, RotationEmbedding, build_graph, is_facial


@dataclass(frozen=True)
class CycleSet:
    graph: Multigraph
    cycles: tuple[Cycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __getitem__(self, i: int) -> Cycle:
        return self.cycles[i]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(c.mask for c in self.cycles)

    @cached_property
    def vertex_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(c.vertices) for c in self.cycles)

    @cached_property
    def shared_vertices(self) -> list[list[int]]:
        k = len(self.cycles)
        table = [[0] * k for _ in range(k)]
        for i, j in combinations(range(k), 2):
            table[i][j] = table[j][i] = len(self.vertex_sets[i] & self.vertex_sets[j])
        return table

    def shared_edges(self, i: int, j: int) -> frozenset[int]:
        return self.cycles[i].edge_set & self.cycles[j].edge_set

    def multi_neighbors(self, i: int) -> list[int]:
        """Cycles sharing two or more vertices with cycle ``i``."""
        row = self.shared_vertices[i]
        return [j for j in range(len(self.cycles)) if j != i and row[j] >= 2]

    def max_multi_intersections(self) -> int:
        return max((len(self.multi_neighbors(i)) for i in range(len(self.cycles))), default=0)

    def max_pairwise_shared(self) -> int:
        return max((max(row) for row in self.shared_vertices), default=0)

    def subset(self, ids: Iterable[int]) -> CycleSet:
        return CycleSet(self.graph, tuple(self.cycles[i] for i in ids))


def validate(graph: Multigraph, cycles: Iterable[Cycle | Sequence[int]]) -> CycleSet:
    """Check each cycle against ``graph`` and reject duplicate edge sets."""
    out = []
    seen: dict[int, int] = {}
    for i, c in enumerate(cycles):
        if not isinstance(c, Cycle):
            c = Cycle.from_vertices(graph, c)
        if len(c) < 3:
            raise InvalidCycle(f"cycle {i} has fewer than 3 edges")
        if len(set(c.vertices)) != len(c.vertices):
            raise InvalidCycle(f"cycle {i} repeats a vertex")
        for k, e in enumerate(c.edges):
            a, b = c.vertices[k], c.vertices[(k + 1) % len(c.vertices)]
            if not (0 <= e < graph.m) or {a, b} != set(graph.edges[e]):
                raise InvalidCycle(f"cycle {i}: edge {e} does not join {a} and {b}")
        if c.mask in seen:
            raise DuplicateCycle(f"cycle {i} repeats cycle {seen[c.mask]}")
        seen[c.mask] = i
        out.append(c)
    return CycleSet(graph, tuple(out))


@dataclass(frozen=True)
class Projection:
    cycle: int
    node: int
    edges: tuple[int, ...]  # skeleton edge indices touched by the cycle
    interface: bool


def project(rt: RootedSPQRTree, cycle_mask: int, mu: int, cycle_id: int = -1) -> Projection | None:
    """Projection of a cycle into ``skel(mu)``, or None when it is not relevant."""
    hits = tuple(
        i for i in range(len(rt.nodes[mu].edges)) if rt.edge_mask(mu, i) & cycle_mask
    )
    if len(hits) < 2:
        return None
    return Projection(cycle_id, mu, hits, rt.parent_edge[mu] in hits)


class CycleIndex:
    """Relevant and interface sets of every node of a rooted SPQR-tree."""

    def __init__(self, rt: RootedSPQRTree, cs: CycleSet):
        self.rt = rt
        self.cs = cs
        n_nodes = len(rt.nodes)
        self.proj: list[dict[int, tuple[int, ...]]] = [dict() for _ in range(n_nodes)]
        self.relevant: list[list[int]] = [[] for _ in range(n_nodes)]
        self.interface: list[list[int]] = [[] for _ in range(n_nodes)]
        masks = cs.masks
        for mu in rt.order:
            pert = rt.pert_mask[mu]
            edge_masks = [rt.edge_mask(mu, i) for i in range(len(rt.nodes[mu].edges))]
            pe = rt.parent_edge[mu]
            for cid, cm in enumerate(masks):
                if mu != rt.root and not cm & pert:
                    continue
                hits = tuple(i for i, em in enumerate(edge_masks) if em & cm)
                if len(hits) < 2:
                    continue
                self.proj[mu][cid] = hits
                self.relevant[mu].append(cid)
                if pe in hits:
                    self.interface[mu].append(cid)

    def interface_mask(self, mu: int) -> int:
        mask = 0
        for cid in self.interface[mu]:
            mask |= 1 << cid
        return mask


def interface_choices(interface: Sequence[int]) -> list[frozenset[int]]:
    """All subsets of size at most two, the empty set first."""
    ids = sorted(interface)
    out = [frozenset()]
    out.extend(frozenset((a,)) for a in ids)
    out.extend(frozenset(p) for p in combinations(ids, 2))
    return out


def check_all_facial(graph: Multigraph, cycles: Sequence[Cycle]) -> tuple[bool, RotationEmbedding | None]:
    """Decide whether every cycle can bound a face at once.

    Each edge becomes a path with one subdivision vertex per cycle through it,
    and each cycle gets an apex joined to its subdivision vertices.  The
    gadget is planar exactly when the cycles can all be facial; the witness
    embedding of ``graph`` is read off the gadget's embedding.
    """
    on_edge: list[list[int]] = [[] for _ in range(graph.m)]
    for ci, c in enumerate(cycles):
        for e in c.edges:
            on_edge[e].append(ci)
    n = graph.n
    apex = list(range(n, n + len(cycles)))
    n_total = n + len(cycles)
    gedges: list[tuple[int, int]] = []
    origin: dict[int, int] = {}  # gadget edge id -> graph edge id, for edges at original vertices
    for e, (u, v) in enumerate(graph.edges):
        prev = u
        for ci in on_edge[e]:
            s = n_total
            n_total += 1
            if prev == u:
                origin[len(gedges)] = e
            gedges.append((prev, s))
            gedges.append((s, apex[ci]))
            prev = s
        origin[len(gedges)] = e
        gedges.append((prev, v))
    gadget = build_graph(n_total, gedges)
    try:
        emb = planar_embed(gadget)
    except NotPlanar:
        return False, None
    rotation = []
    for x in range(n):
        darts = []
        for gd in emb.rotation[x]:
            e = origin[gd >> 1]
            darts.append(2 * e if graph.edges[e][0] == x else 2 * e + 1)
        rotation.append(tuple(darts))
    witness = RotationEmbedding(tuple(rotation), 0 if graph.m else None)
    assert all(is_facial(graph, witness, c) for c in cycles)
    return True, witness
