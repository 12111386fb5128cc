"""Instance generators: the two hardness constructions, named graphs, random families."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field

import networkx as nx

from .cycles import CycleSet, validate
from .decomp import P, R, build_spqr, compose_embedding, planar_embed, root_at
from .errors import Not3Connected, NotACycle, NotCubic, UnknownName
from .graph import Cycle, Multigraph, build_graph, dual, face_walks, trace_faces
from .oracle import ChoiceIterator


@dataclass
class Instance:
    graph: Multigraph
    cycles: CycleSet
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# named graphs
# ---------------------------------------------------------------------------


def _from_nx(g: nx.Graph) -> Multigraph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return build_graph(len(nodes), sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges()))


def theta(k: int, length: int) -> Multigraph:
    """Two terminals 0 and 1 joined by ``k`` paths of ``length`` edges each."""
    edges = []
    n = 2
    for _ in range(k):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return build_graph(n, edges)


def bridged_double_k4() -> Multigraph:
    """Two K4 copies, one edge of each subdivided, the subdivision vertices joined by a bridge."""
    edges = []
    for base in (0, 5):
        a, b, c, d, s = base, base + 1, base + 2, base + 3, base + 4
        edges += [(a, c), (a, d), (b, c), (b, d), (c, d), (a, s), (s, b)]
    edges.append((4, 9))
    return build_graph(10, edges)


def named(name: str) -> Multigraph:
    if name == "K4":
        return _from_nx(nx.complete_graph(4))
    if name == "K23":
        return theta(3, 2)
    if name == "K33":
        return _from_nx(nx.complete_bipartite_graph(3, 3))
    if name == "cube":
        return _from_nx(nx.convert_node_labels_to_integers(nx.hypercube_graph(3)))
    if name == "octahedron":
        return _from_nx(nx.octahedral_graph())
    if name == "petersen":
        return _from_nx(nx.petersen_graph())
    if name == "bridged_double_k4":
        return bridged_double_k4()
    m = re.fullmatch(r"C_?(\d+)", name)
    if m and int(m.group(1)) >= 3:
        n = int(m.group(1))
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    m = re.fullmatch(r"theta_(\d+)_(?:len_)?(\d+)", name)
    if m:
        return theta(int(m.group(1)), int(m.group(2)))
    raise UnknownName(f"unknown graph name {name!r}")


# ---------------------------------------------------------------------------
# hardness constructions
# ---------------------------------------------------------------------------


def _require_cubic(h: Multigraph) -> None:
    if not h.is_simple() or any(h.degree(v) != 3 for v in range(h.n)):
        raise NotCubic("graph must be simple and 3-regular")


def max_independent_set_size(h: Multigraph) -> int:
    comp = nx.complement(h.to_networkx())
    clique, _ = nx.max_weight_clique(comp, weight=None)
    return len(clique)


def from_mis(h: Multigraph) -> Instance:
    """Dual triangulation plus one edge vertex per dual edge; cycles are the dual's faces."""
    _require_cubic(h)
    emb = planar_embed(h)
    if nx.node_connectivity(h.to_networkx()) < 3:
        raise Not3Connected("graph must be 3-connected")
    hstar, _ = dual(h, emb)
    faces = trace_faces(hstar, planar_embed(hstar))
    f = hstar.n
    edges = list(hstar.edges)
    for e, (u, v) in enumerate(hstar.edges):
        edges += [(u, f + e), (f + e, v)]
    g = build_graph(f + hstar.m, edges)
    cycles = [Cycle.from_edges(g, sorted(face.edges)) for face in faces]
    cs = validate(g, cycles)
    # each cycle meets at most three others in more than one vertex
    assert cs.max_multi_intersections() <= 3
    meta = {
        "construction": "from_mis",
        "source": {"n": h.n, "edges": list(h.edges)},
        "optimum": max_independent_set_size(h),
        "optimum_rule": "maximum independent set of the source graph",
    }
    return Instance(g, cs, meta)


def port_numbering(h: Multigraph) -> list[tuple[int, int]]:
    """For every edge (a, b): its index among a's edges and among b's edges, in edge order."""
    seen = [0] * h.n
    ports = []
    for a, b in h.edges:
        ports.append((seen[a], seen[b]))
        seen[a] += 1
        seen[b] += 1
    return ports


def circular_order_optimum(h: Multigraph) -> int:
    """Max over circular vertex orders of the number of consecutive pairs adjacent in ``h``."""
    n = h.n
    adj = [[False] * n for _ in range(n)]
    for a, b in h.edges:
        adj[a][b] = adj[b][a] = True
    best = 0
    for rest in itertools.permutations(range(1, n)):
        if n > 2 and rest[0] > rest[-1]:
            continue  # each circular order and its reverse once
        order = (0, *rest)
        score = sum(adj[order[i]][order[(i + 1) % n]] for i in range(n))
        if score > best:
            best = score
            if best == n:
                break
    return best


def from_hamiltonian(h: Multigraph) -> Instance:
    """One K_{2,3} gadget per vertex with shared s and t; one cycle per edge of ``h``.

    Vertex layout: s = 0, t = 1, v^a = 2 + 4a, u^a_i = 3 + 4a + i.
    """
    _require_cubic(h)
    s, t = 0, 1
    edges = []
    for a in range(h.n):
        va = 2 + 4 * a
        for i in range(3):
            ua = 3 + 4 * a + i
            edges += [(s, ua), (ua, va)]
        edges.append((va, t))
    g = build_graph(2 + 4 * h.n, edges)
    cycles = []
    for (a, b), (i, j) in zip(h.edges, port_numbering(h)):
        cycles.append(Cycle.from_vertices(g, [s, 3 + 4 * a + i, 2 + 4 * a, t, 2 + 4 * b, 3 + 4 * b + j]))
    cs = validate(g, cycles)
    assert cs.max_pairwise_shared() <= 3
    opt = circular_order_optimum(h)
    meta = {
        "construction": "from_hamiltonian",
        "source": {"n": h.n, "edges": list(h.edges)},
        "optimum": opt,
        "hamiltonian": opt == h.n,
        "optimum_rule": "best circular order of the source vertices",
    }
    return Instance(g, cs, meta)


# ---------------------------------------------------------------------------
# random families
# ---------------------------------------------------------------------------


def _random_sp(n: int, rng: random.Random) -> Multigraph:
    edges = [(0, 1), (1, 2), (2, 0)]
    nv = 3
    while nv < n:
        op = rng.random()
        u, v = edges[rng.randrange(len(edges))]
        if op < 0.45:
            # series: subdivide an edge
            edges.remove((u, v))
            edges += [(u, nv), (nv, v)]
        elif op < 0.85:
            # parallel: a new 2-path beside an existing edge
            edges += [(u, nv), (nv, v)]
        else:
            # parallel with a direct edge around a degree-2 vertex
            deg: dict[int, list[int]] = {}
            for a, b in edges:
                deg.setdefault(a, []).append(b)
                deg.setdefault(b, []).append(a)
            cands = [w for w, nb in deg.items() if len(nb) == 2 and (min(nb), max(nb)) not in edges and (max(nb), min(nb)) not in edges]
            if cands:
                w = rng.choice(sorted(cands))
                a, b = deg[w]
                edges.append((a, b))
            continue
        nv += 1
    return build_graph(nv, edges)


def _random_triconnected(n: int, rng: random.Random) -> Multigraph:
    rim = max(3, min(n - 1, rng.randint(3, 5)))
    edges = {(0, i) for i in range(1, rim + 1)}
    edges |= {(min(i, i % rim + 1), max(i, i % rim + 1)) for i in range(1, rim + 1)}
    faces = [[0, i, i % rim + 1] for i in range(1, rim + 1)]
    faces.append(list(range(rim, 0, -1)))
    nv = rim + 1
    while nv < n or rng.random() < 0.3:
        fi = rng.randrange(len(faces))
        face = faces[fi]
        k = len(face)
        if nv < n and (rng.random() < 0.7 or k == 3):
            # new vertex joined to at least three corners of the face
            size = rng.randint(3, k)
            picks = sorted(rng.sample(range(k), size))
            x = nv
            nv += 1
            new_faces = []
            for j, p in enumerate(picks):
                q = picks[(j + 1) % len(picks)]
                seg = [face[(p + step) % k] for step in range(((q - p) % k or k) + 1)]
                new_faces.append([x] + seg)
                edges.add((min(x, face[p]), max(x, face[p])))
            faces[fi:fi + 1] = new_faces
        else:
            pairs = [(i, j) for i in range(k) for j in range(i + 2, k) if not (i == 0 and j == k - 1)]
            pairs = [(i, j) for i, j in pairs if (min(face[i], face[j]), max(face[i], face[j])) not in edges]
            if not pairs:
                if nv >= n:
                    break
                continue
            i, j = rng.choice(pairs)
            edges.add((min(face[i], face[j]), max(face[i], face[j])))
            faces[fi:fi + 1] = [face[i:j + 1], face[j:] + face[:i + 1]]
    return build_graph(nv, sorted(edges))


def _substitute(core: Multigraph, n: int, rng: random.Random) -> Multigraph:
    """Grow series-parallel pieces on random edges of a 3-connected core."""
    edges = list(core.edges)
    nv = core.n
    while nv < n:
        u, v = edges[rng.randrange(len(edges))]
        if rng.random() < 0.5:
            edges.remove((u, v))
            edges += [(u, nv), (nv, v)]
        else:
            edges += [(u, nv), (nv, v)]
        nv += 1
    return build_graph(nv, edges)


def random_graph(family: str, n: int, rng: random.Random) -> Multigraph:
    if family == "series_parallel":
        return _random_sp(n, rng)
    if family == "triconnected":
        return _random_triconnected(max(n, 4), rng)
    if family == "biconnected":
        core_n = rng.randint(4, max(4, min(7, n - 2)))
        return _substitute(_random_triconnected(core_n, rng), n, rng)
    raise UnknownName(f"unknown family {family!r}")


def _embedding_count(g: Multigraph) -> int:
    return len(ChoiceIterator(root_at(build_spqr(g), 0)))


def _random_faces(g: Multigraph, rng: random.Random, rounds: int) -> list[frozenset[int]]:
    rt = root_at(build_spqr(g), 0)
    it = ChoiceIterator(rt, dedupe_mirror=False)
    out = []
    for _ in range(rounds):
        choice = _random_choice(rt, it, rng)
        for w in face_walks(compose_embedding(rt, choice).rotation):
            out.append(frozenset(d >> 1 for d in w))
    return out


def _random_choice(rt, it: ChoiceIterator, rng: random.Random):
    from .decomp import EmbeddingChoice

    choice = EmbeddingChoice()
    for mu, opts in zip(it.nodes, it.options):
        opt = opts[rng.randrange(len(opts))]
        if rt.kind(mu) == P:
            choice.p_orders[mu] = opt
        else:
            choice.r_flips[mu] = opt
    return choice


def _fundamental_cycles(g: Multigraph, rng: random.Random) -> list[frozenset[int]]:
    order = list(range(g.m))
    rng.shuffle(order)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    rest = []
    for e in order:
        a, b = (find(x) for x in g.edges[e])
        if a != b:
            parent[a] = b
            tree.append(e)
        else:
            rest.append(e)
    t = nx.Graph()
    for e in tree:
        u, v = g.edges[e]
        t.add_edge(u, v, id=e)
    out = []
    for e in rest:
        u, v = g.edges[e]
        path = nx.shortest_path(t, u, v)
        ids = {t.edges[path[i], path[i + 1]]["id"] for i in range(len(path) - 1)}
        out.append(frozenset(ids | {e}))
    return out


def _filter(pool: list[Cycle], rng: random.Random, accept) -> list[Cycle]:
    chosen: list[Cycle] = []
    for c in pool:
        if accept(chosen, c):
            chosen.append(c)
    return chosen


def _thm5_ok(chosen: list[Cycle], c: Cycle) -> bool:
    vs = set(c.vertices)
    heavy = [d for d in chosen if len(vs & set(d.vertices)) >= 2]
    if len(heavy) > 2:
        return False
    for d in heavy:
        dv = set(d.vertices)
        if sum(1 for x in chosen if x is not d and len(dv & set(x.vertices)) >= 2) >= 2:
            return False
    return True


def _thm6_ok(chosen: list[Cycle], c: Cycle) -> bool:
    vs = set(c.vertices)
    return all(len(vs & set(d.vertices)) <= 2 for d in chosen)


def _r_ok(r: int):
    def ok(chosen: list[Cycle], c: Cycle) -> bool:
        vs = set(c.vertices)
        heavy = [d for d in chosen if len(vs & set(d.vertices)) >= 2]
        if len(heavy) > r:
            return False
        for d in heavy:
            dv = set(d.vertices)
            if sum(1 for x in chosen if x is not d and len(dv & set(x.vertices)) >= 2) >= r:
                return False
        return True

    return ok


def random_instance(
    family: str,
    n: int,
    cycle_policy: str = "faces_of_random_embedding",
    seed: int = 0,
    *,
    max_embeddings: int | None = 2000,
    max_cycles: int = 12,
    r: int = 3,
) -> Instance:
    """Deterministic random instance; graphs are resampled until their embedding count is small."""
    rng = random.Random(f"{family}:{n}:{cycle_policy}:{seed}")
    for _ in range(200):
        g = random_graph(family, n, rng)
        if max_embeddings is None or _embedding_count(g) <= max_embeddings:
            break
    else:
        raise RuntimeError("could not draw a graph within the embedding budget")
    if cycle_policy == "faces_of_random_embedding":
        masks = _random_faces(g, rng, 1)
    else:
        masks = _random_faces(g, rng, 3) + _fundamental_cycles(g, rng)
    uniq = []
    seen = set()
    for m in masks:
        if m not in seen and len(m) >= 3:
            seen.add(m)
            uniq.append(m)
    rng.shuffle(uniq)
    pool = []
    for m in uniq:
        try:
            pool.append(Cycle.from_edges(g, sorted(m)))
        except NotACycle:
            continue
    if cycle_policy == "faces_of_random_embedding":
        cycles = pool[:max_cycles]
    elif cycle_policy == "random_simple_cycles":
        cycles = pool[:max_cycles]
    elif cycle_policy == "condition_thm5":
        cycles = _filter(pool, rng, _thm5_ok)[:max_cycles]
    elif cycle_policy == "condition_thm6":
        cycles = _filter(pool, rng, _thm6_ok)[:max_cycles]
    elif cycle_policy == "condition_r":
        cycles = _filter(pool, rng, _r_ok(r))[:max_cycles]
    else:
        raise UnknownName(f"unknown cycle policy {cycle_policy!r}")
    cs = validate(g, cycles)
    meta = {"construction": f"random:{family}", "policy": cycle_policy, "seed": seed, "n": n}
    if cycle_policy == "faces_of_random_embedding":
        meta["optimum"] = len(cs)
        meta["optimum_rule"] = "faces of one embedding coexist"
    return Instance(g, cs, meta)
