"""Line-oriented text formats for instances and embeddings.

Instance::

    facemax-instance 1
    n 5
    e 0 1            # one line per edge, ids in order of appearance
    c 0 1 2 3        # cycle by vertex sequence
    ce 0 4 7         # cycle by edge ids (needed with parallel edges)

Embedding::

    facemax-embedding 1
    mode exact
    theorem Theorem 5
    factor 1
    runtime 0.0031
    value 2
    rot 0 : 0 3 5    # clockwise edge ids around vertex 0, one line per vertex
    outer 0 1 2      # edge ids of the outer face
    realized 0 2     # ids of the cycles claimed facial

Blank lines and text after ``#`` are ignored.  Vertex ids are 0-based.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .cycles import CycleSet, validate
from .errors import FacemaxError, NonPlanarRotation, ParseError
from .graph import Cycle, Multigraph, RotationEmbedding, build_graph, face_walks
from .solution import Solution

INSTANCE_HEADER = "facemax-instance 1"
EMBEDDING_HEADER = "facemax-embedding 1"


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def parse_instance(text: str) -> tuple[Multigraph, CycleSet]:
    lines = list(_lines(text))
    if not lines or " ".join(lines[0][1]) != INSTANCE_HEADER:
        raise ParseError(f"missing header {INSTANCE_HEADER!r}", lines[0][0] if lines else 1)
    n = None
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    raw_cycles: list[tuple[int, str, list[int]]] = []
    for no, tok in lines[1:]:
        key, rest = tok[0], tok[1:]
        if key == "n":
            if n is not None or len(rest) != 1:
                raise ParseError("expected a single 'n <count>' line", no)
            (n,) = _ints(rest, no)
        elif key == "e":
            if len(rest) != 2:
                raise ParseError("edge lines read 'e <u> <v>'", no)
            u, v = _ints(rest, no)
            edges.append((u, v))
            edge_lines.append(no)
        elif key in ("c", "ce"):
            raw_cycles.append((no, key, _ints(rest, no)))
        else:
            raise ParseError(f"unknown record {key!r}", no)
    if n is None:
        raise ParseError("missing 'n <count>' line", lines[0][0])
    for no, (u, v) in zip(edge_lines, edges):
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) outside 0..{n - 1}", no)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", no)
    try:
        g = build_graph(n, edges)
    except FacemaxError as exc:
        raise ParseError(str(exc)) from exc
    cycles = []
    for no, key, vals in raw_cycles:
        try:
            cycles.append(Cycle.from_vertices(g, vals) if key == "c" else Cycle.from_edges(g, vals))
        except FacemaxError as exc:
            raise ParseError(str(exc), no) from exc
    try:
        cs = validate(g, cycles)
    except FacemaxError as exc:
        raise ParseError(str(exc)) from exc
    return g, cs


def format_instance(graph: Multigraph, cycles: Iterable[Cycle], comments: Iterable[str] = ()) -> str:
    out = [INSTANCE_HEADER]
    out += [f"# {c}" for c in comments]
    out.append(f"n {graph.n}")
    out += [f"e {u} {v}" for u, v in graph.edges]
    for c in cycles:
        try:
            unique = Cycle.from_vertices(graph, c.vertices) == c
        except FacemaxError:
            unique = False
        if unique:
            out.append("c " + " ".join(map(str, c.vertices)))
        else:
            out.append("ce " + " ".join(map(str, c.edges)))
    return "\n".join(out) + "\n"


@dataclass
class EmbeddingFile:
    graph: Multigraph
    embedding: RotationEmbedding
    realized: tuple[int, ...]
    meta: dict = field(default_factory=dict)

    @property
    def outer_edges(self) -> list[int]:
        if self.embedding.outer_dart is None:
            return []
        for w in face_walks(self.embedding.rotation):
            if self.embedding.outer_dart in w:
                return [d >> 1 for d in w]
        return []


def _edge_rotation(emb: RotationEmbedding) -> list[list[int]]:
    return [[d >> 1 for d in darts] for darts in emb.rotation]


def format_embedding(sol: Solution, graph: Multigraph) -> str:
    ef = EmbeddingFile(graph, sol.embedding, sol.realized)
    out = [
        EMBEDDING_HEADER,
        f"mode {sol.mode}",
        f"theorem {sol.theorem}" if sol.theorem else "theorem -",
        f"factor {sol.factor_label}",
        f"runtime {sol.runtime:.6f}",
        f"value {sol.value}",
    ]
    for v, edges in enumerate(_edge_rotation(sol.embedding)):
        out.append(f"rot {v} : " + " ".join(map(str, edges)))
    out.append("outer " + " ".join(map(str, ef.outer_edges)))
    out.append("realized " + " ".join(map(str, sol.realized)))
    return "\n".join(out) + "\n"


def parse_embedding(text: str, graph: Multigraph | None = None) -> EmbeddingFile:
    """Read an embedding file.

    Without ``graph`` the graph is recovered from the rotation lines; with it
    the rotation is read against that graph and must list exactly its edges.
    """
    lines = list(_lines(text))
    if not lines or " ".join(lines[0][1]) != EMBEDDING_HEADER:
        raise ParseError(f"missing header {EMBEDDING_HEADER!r}", lines[0][0] if lines else 1)
    meta: dict = {}
    rot: dict[int, list[int]] = {}
    outer: list[int] = []
    realized: list[int] = []
    for no, tok in lines[1:]:
        key, rest = tok[0], tok[1:]
        if key == "rot":
            if len(rest) < 2 or rest[1] != ":":
                raise ParseError("rotation lines read 'rot <v> : <edge ids>'", no)
            (v,) = _ints(rest[:1], no)
            if v in rot:
                raise ParseError(f"vertex {v} listed twice", no)
            rot[v] = _ints(rest[2:], no)
        elif key == "outer":
            outer = _ints(rest, no)
        elif key == "realized":
            realized = _ints(rest, no)
        elif key in ("mode", "theorem", "factor", "runtime", "value"):
            meta[key] = " ".join(rest)
        else:
            raise ParseError(f"unknown record {key!r}", no)
    n = len(rot)
    if sorted(rot) != list(range(n)):
        raise ParseError("rotation lines must cover vertices 0..n-1")
    ends: dict[int, list[int]] = {}
    for v in range(n):
        for e in rot[v]:
            ends.setdefault(e, []).append(v)
    m = len(ends)
    if sorted(ends) != list(range(m)) or any(len(x) != 2 for x in ends.values()):
        raise ParseError("every edge id must appear at exactly two vertices")
    if graph is None:
        graph = build_graph(n, [tuple(ends[e]) for e in range(m)])
    elif graph.n != n or graph.m != m or any(set(graph.edges[e]) != set(ends[e]) for e in range(m)):
        raise NonPlanarRotation("rotation does not list the instance's edges at their endpoints")
    rotation = tuple(
        tuple(2 * e if graph.edges[e][0] == v else 2 * e + 1 for e in rot[v]) for v in range(n)
    )
    outer_dart = None
    if outer:
        target = set(outer)
        for w in face_walks(rotation) if _is_permutation(rotation, m) else []:
            if {d >> 1 for d in w} == target:
                outer_dart = w[0]
                break
    if "value" in meta:
        try:
            meta["value"] = int(meta["value"])
        except ValueError:
            raise ParseError("value must be an integer") from None
    meta["outer"] = outer
    return EmbeddingFile(graph, RotationEmbedding(rotation, outer_dart), tuple(realized), meta)


def _is_permutation(rotation, m: int) -> bool:
    darts = [d for r in rotation for d in r]
    return len(darts) == len(set(darts)) == 2 * m


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str | None, text: str, stream: TextIO | None = None) -> None:
    if path is None or path == "-":
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
