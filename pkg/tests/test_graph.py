from __future__ import annotations

import networkx as nx
import pytest

from facemax.decomp import planar_embed
from facemax.errors import NonPlanarRotation, SelfLoop, VertexOutOfRange
from facemax.gen import named
from facemax.graph import (
    Cycle,
    RotationEmbedding,
    build_graph,
    dual,
    face_walks,
    is_biconnected,
    is_facial,
    reverse,
    trace_faces,
)


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert g.m == 3 and g.n == 3


def test_build_dipole_keeps_parallel_edges():
    g = build_graph(2, [(0, 1), (0, 1), (0, 1)])
    assert g.m == 3
    assert not g.is_simple()
    assert g.edges_between(0, 1) == [0, 1, 2]


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        build_graph(2, [(0, 0)])


def test_vertex_out_of_range():
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 5)])


def test_dart_reverse_is_involution():
    for d in range(10):
        assert reverse(reverse(d)) == d and reverse(d) != d


def test_triangle_has_two_faces():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert len(trace_faces(g, planar_embed(g))) == 2


def test_k4_has_four_triangular_faces(k4):
    faces = trace_faces(k4, planar_embed(k4))
    assert len(faces) == 4
    assert all(len(f.edges) == 3 for f in faces)


def test_k5_rotation_is_not_planar():
    g = build_graph(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    emb = RotationEmbedding(tuple(tuple(ds) for ds in g.out_darts()))
    with pytest.raises(NonPlanarRotation):
        trace_faces(g, emb)


def test_face_tracing_partitions_darts(k4):
    walks = face_walks(planar_embed(k4).rotation)
    darts = sorted(d for w in walks for d in w)
    assert darts == list(range(2 * k4.m))


def test_is_facial_k4(k4):
    emb = planar_embed(k4)
    for tri in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        assert is_facial(k4, emb, Cycle.from_vertices(k4, tri))
    assert not is_facial(k4, emb, Cycle.from_vertices(k4, (0, 1, 2, 3)))


def test_c5_cycle_is_facial():
    g = named("C5")
    assert is_facial(g, planar_embed(g), Cycle.from_vertices(g, range(5)))


def test_k4_is_self_dual(k4):
    d, faces = dual(k4, planar_embed(k4))
    assert len(faces) == 4
    assert nx.is_isomorphic(d.to_networkx(), nx.complete_graph(4))


def test_triangle_dual_is_dipole():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    d, _ = dual(g, planar_embed(g))
    assert d.n == 2 and d.m == 3
    assert all(set(e) == {0, 1} for e in d.edges)


def test_cube_dual_is_octahedron():
    g = named("cube")
    d, _ = dual(g, planar_embed(g))
    assert (d.n, d.m) == (6, 12)
    assert nx.is_isomorphic(d.to_networkx(), nx.octahedral_graph())


@pytest.mark.parametrize(
    "n, edges, expected",
    [
        (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], True),
        (3, [(0, 1), (1, 2)], False),
        (5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], False),
    ],
)
def test_is_biconnected(n, edges, expected):
    assert is_biconnected(build_graph(n, edges)) is expected


def test_mirror_keeps_faces(k4):
    emb = planar_embed(k4)
    a = {frozenset(f.edges) for f in trace_faces(k4, emb)}
    b = {frozenset(f.edges) for f in trace_faces(k4, emb.mirror())}
    assert a == b
