"""facemax: embeddings of planar graphs that maximize facial cycles."""

from .api import solve
from .approx import approximate
from .cycles import CycleSet, check_all_facial, validate
from .decomp import build_spqr, compose_embedding, planar_embed, root_at
from .estimator import FacialCycleEmbedder
from .exact import solve_exact, solve_sp_fpt, solve_sp_two_shared
from .graph import Cycle, Multigraph, RotationEmbedding, build_graph, trace_faces
from .oracle import brute_opt
from .solution import Solution

__all__ = [
    "Cycle",
    "CycleSet",
    "FacialCycleEmbedder",
    "Multigraph",
    "RotationEmbedding",
    "Solution",
    "approximate",
    "brute_opt",
    "build_graph",
    "build_spqr",
    "check_all_facial",
    "compose_embedding",
    "planar_embed",
    "root_at",
    "solve",
    "solve_exact",
    "solve_sp_fpt",
    "solve_sp_two_shared",
    "trace_faces",
    "validate",
]
