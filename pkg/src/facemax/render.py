"""DOT and SVG output for an embedding (presentation only)."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .graph import Multigraph, RotationEmbedding, face_walks


def _outer_walk(emb: RotationEmbedding, walks: list[list[int]]) -> list[int]:
    if emb.outer_dart is not None:
        for w in walks:
            if emb.outer_dart in w:
                return w
    return max(walks, key=len)


def tutte_layout(graph: Multigraph, emb: RotationEmbedding) -> np.ndarray:
    """Barycentric layout with the outer face pinned to a regular polygon."""
    walks = face_walks(emb.rotation)
    outer = [graph.tail(d) for d in _outer_walk(emb, walks)]
    seen = []
    for v in outer:
        if v not in seen:
            seen.append(v)
    pos = np.zeros((graph.n, 2))
    k = len(seen)
    for i, v in enumerate(seen):
        angle = 2 * math.pi * i / k
        pos[v] = (math.cos(angle), math.sin(angle))
    inner = [v for v in range(graph.n) if v not in set(seen)]
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for u, v in graph.edges:
            for x, y in ((u, v), (v, u)):
                if x in index:
                    a[index[x], index[x]] += 1
                    if y in index:
                        a[index[x], index[y]] -= 1
                    else:
                        b[index[x]] += pos[y]
        solved = np.linalg.lstsq(a, b, rcond=None)[0]
        for v, i in index.items():
            pos[v] = solved[i]
    return pos


def to_dot(graph: Multigraph, emb: RotationEmbedding) -> str:
    """DOT graph with layout coordinates; the rotation is recorded per vertex."""
    pos = tutte_layout(graph, emb)
    out = ["graph facemax {", "  node [shape=circle];"]
    for v in range(graph.n):
        x, y = pos[v] * 200
        order = " ".join(str(d >> 1) for d in emb.rotation[v])
        out.append(f'  {v} [pos="{x:.1f},{y:.1f}!", rotation="{order}"];')
    for e, (u, v) in enumerate(graph.edges):
        out.append(f'  {u} -- {v} [label="{e}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def to_svg(graph: Multigraph, emb: RotationEmbedding, highlight: Sequence[int] = (), size: int = 480) -> str:
    """Straight-line drawing; bounded faces are filled, faces in ``highlight`` (edge masks) stand out."""
    pos = tutte_layout(graph, emb)
    walks = face_walks(emb.rotation)
    outer = _outer_walk(emb, walks)
    pad = 30
    scale = (size - 2 * pad) / 2

    def xy(v):
        x, y = pos[v]
        return pad + (x + 1) * scale, pad + (1 - y) * scale

    marks = set(highlight)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for w in walks:
        if w is outer:
            continue
        mask = 0
        for d in w:
            mask |= 1 << (d >> 1)
        fill = "#f4a261" if mask in marks else "#e9f1f7"
        pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in (xy(graph.tail(d)) for d in w))
        out.append(f'  <polygon points="{pts}" fill="{fill}" stroke="none"/>')
    for u, v in graph.edges:
        (x1, y1), (x2, y2) = xy(u), xy(v)
        out.append(f'  <line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="#333"/>')
    for v in range(graph.n):
        x, y = xy(v)
        out.append(f'  <circle cx="{x:.1f}" cy="{y:.1f}" r="9" fill="white" stroke="#333"/>')
        out.append(f'  <text x="{x:.1f}" y="{y + 4:.1f}" font-size="10" text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
