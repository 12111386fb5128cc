"""Mode dispatch: pick the strongest applicable algorithm for an instance."""

from __future__ import annotations

from .approx import DEFAULT_EPSILON, approximate
from .cycles import CycleSet
from .decomp import R, build_spqr
from .exact import solve_exact, solve_sp_fpt, solve_sp_two_shared
from .graph import Multigraph
from .oracle import brute_opt
from .solution import Solution
from .validation import check_cycles, check_epsilon, check_graph, check_mode

FPT_AUTO_LIMIT = 10  # auto mode uses the FPT solver only while 2^r stays small


def applicable(graph: Multigraph, cs: CycleSet) -> dict[str, bool]:
    """Which exact regimes the instance falls into."""
    series_parallel = build_spqr(graph).count(R) == 0
    multi = cs.max_multi_intersections()
    return {
        "series_parallel": series_parallel,
        "sp-two-shared": series_parallel and cs.max_pairwise_shared() <= 2,
        "exact": multi <= 2,
        "sp-fpt": series_parallel and multi <= FPT_AUTO_LIMIT,
    }


def solve(graph, cycles, mode: str = "auto", *, epsilon: float = DEFAULT_EPSILON, budget: int | None = None, r: int | None = None) -> Solution:
    g = check_graph(graph)
    cs = check_cycles(g, cycles)
    mode = check_mode(mode)
    epsilon = check_epsilon(epsilon)
    if mode == "auto":
        ok = applicable(g, cs)
        for name in ("sp-two-shared", "exact", "sp-fpt"):
            if ok[name]:
                mode = name
                break
        else:
            mode = "approx"
    if mode == "sp-two-shared":
        return solve_sp_two_shared(g, cs)
    if mode == "exact":
        return solve_exact(g, cs)
    if mode == "sp-fpt":
        return solve_sp_fpt(g, cs, r)
    if mode == "approx":
        return approximate(g, cs, epsilon)
    return brute_opt(g, cs, budget=budget)
