from __future__ import annotations

from itertools import combinations

import pytest

from facemax.cycles import CycleIndex, check_all_facial, interface_choices, project, validate
from facemax.decomp import P, S, build_spqr, root_at
from facemax.errors import DuplicateCycle, NotACycle
from facemax.gen import from_mis, named
from facemax.graph import Cycle, face_masks, trace_faces

from conftest import pair_cycles

K4_TRIANGLES = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_validate_k4_triangles(k4):
    cs = validate(k4, K4_TRIANGLES)
    assert len(cs) == 4
    assert cs.max_pairwise_shared() == 2
    for i, j in combinations(range(4), 2):
        assert cs.shared_vertices[i][j] == 2


def test_missing_edge_is_not_a_cycle():
    g = named("C5")
    with pytest.raises(NotACycle):
        validate(g, [(0, 1, 2)])


def test_duplicate_cycle(k4):
    with pytest.raises(DuplicateCycle):
        validate(k4, [(0, 1, 2), (1, 2, 0)])


def test_projection_k23(k23):
    rt = root_at(build_spqr(k23), 0)
    cyc = pair_cycles(k23, 3)  # (p1,p2), (p1,p3), (p2,p3); path i = edges 2i, 2i+1
    (p,) = [mu for mu in rt.order if rt.kind(mu) == P]
    proj = project(rt, cyc[0].mask, p, 0)
    assert proj is not None and len(proj.edges) == 2 and proj.interface
    path3 = next(c for i, c in rt.children[p] if rt.pert_mask[c] == 0b110000)
    assert rt.kind(path3) == S
    assert project(rt, cyc[0].mask, path3, 0) is None


def test_projection_c5_uses_parent_edge():
    g = named("C5")
    rt = root_at(build_spqr(g), 0)
    proj = project(rt, Cycle.from_vertices(g, range(5)).mask, rt.phi, 0)
    assert len(proj.edges) == 5 and proj.interface


def test_relevant_and_interface_k23(k23):
    rt = root_at(build_spqr(k23), 0)
    idx = CycleIndex(rt, validate(k23, pair_cycles(k23, 3)))
    (p,) = [mu for mu in rt.order if rt.kind(mu) == P]
    assert sorted(idx.relevant[p]) == [0, 1, 2]
    assert sorted(idx.interface[p]) == [0, 1]


def test_relevant_and_interface_c5():
    g = named("C5")
    rt = root_at(build_spqr(g), 0)
    idx = CycleIndex(rt, validate(g, [range(5)]))
    assert idx.relevant[rt.phi] == [0] and idx.interface[rt.phi] == [0]


@pytest.mark.parametrize("k, expected", [(0, 1), (2, 4), (3, 7)])
def test_interface_choices(k, expected):
    out = interface_choices(range(k))
    assert len(out) == expected and out[0] == frozenset()
    assert all(len(I) <= 2 for I in out)


def test_check_all_facial_k4(k4):
    cyc = [Cycle.from_vertices(k4, t) for t in K4_TRIANGLES]
    ok, emb = check_all_facial(k4, cyc[:1])
    assert ok
    ok, emb = check_all_facial(k4, cyc)
    assert ok
    trace_faces(k4, emb)
    assert all(c.mask in face_masks(emb) for c in cyc)


def test_check_all_facial_edge_sharing_pair():
    inst = from_mis(named("K4"))
    cs = inst.cycles
    i, j = next((i, j) for i, j in combinations(range(len(cs)), 2) if cs.shared_edges(i, j))
    ok, emb = check_all_facial(inst.graph, [cs[i], cs[j]])
    assert not ok and emb is None


def test_check_all_facial_empty(k4):
    ok, emb = check_all_facial(k4, [])
    assert ok
    trace_faces(k4, emb)
