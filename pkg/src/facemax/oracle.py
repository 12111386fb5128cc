"""Exhaustive ground truth used to test the exact and approximate solvers.

Embeddings are enumerated through SPQR choice points (P-node orders and
R-node flips), never through raw rotation systems.  A second search mode
looks for the largest simultaneously facial subset of cycles with the
gadget test; it is the only workable option when the embedding count is
astronomical but the cycle set is small.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .cycles import CycleIndex, CycleSet, check_all_facial, interface_choices, validate
from .decomp import P, R, EmbeddingChoice, RootedSPQRTree, build_spqr, compose_embedding, root_at
from .errors import BudgetExceeded
from .graph import Cycle, Multigraph, RotationEmbedding, face_walks
from .solution import Solution

NEG_INF = -math.inf
DEFAULT_BUDGET = 10**7
# below this many embeddings plain enumeration beats the subset search
SMALL_CHOICE_SPACE = 2000

# running totals over every embedding the oracle has looked at
AUDIT = {"embeddings": 0, "euler_failures": 0, "facial_interface_violations": 0, "facial_interface_checks": 0}


def reset_audit() -> None:
    for k in AUDIT:
        AUDIT[k] = 0


def default_budget() -> int:
    raw = os.environ.get("FACEMAX_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _options(rt: RootedSPQRTree, mu: int) -> list:
    if rt.kind(mu) == P:
        return list(permutations(i for i, _ in rt.children[mu]))
    return [False, True]


class ChoiceIterator:
    """Cartesian product of skeleton choices over the given P- and R-nodes.

    With ``dedupe_mirror`` the first node is pinned so that an embedding and
    its mirror image are not both produced.
    """

    def __init__(self, rt: RootedSPQRTree, nodes: Sequence[int] | None = None, *, dedupe_mirror: bool = True):
        if nodes is None:
            nodes = [mu for mu in rt.order if rt.kind(mu) in (P, R)]
        self.rt = rt
        self.nodes = list(nodes)
        self.options = [_options(rt, mu) for mu in self.nodes]
        if dedupe_mirror and self.nodes:
            first = self.options[0]
            if rt.kind(self.nodes[0]) == P:
                self.options[0] = [o for o in first if o[0] < o[-1]]
            else:
                self.options[0] = [False]

    def __len__(self) -> int:
        return math.prod(len(o) for o in self.options)

    def __iter__(self) -> Iterator[EmbeddingChoice]:
        kinds = [self.rt.kind(mu) for mu in self.nodes]
        for combo in product(*self.options):
            choice = EmbeddingChoice()
            for mu, kind, opt in zip(self.nodes, kinds, combo):
                if kind == P:
                    choice.p_orders[mu] = opt
                else:
                    choice.r_flips[mu] = opt
            yield choice


def count_embeddings(graph: Multigraph) -> int:
    tree = build_spqr(graph)
    total = 1
    any_choice = False
    for nd in tree.nodes:
        if nd.kind == P:
            total *= math.factorial(len(nd.edges) - 1)
            any_choice = True
        elif nd.kind == R:
            total *= 2
            any_choice = True
    return total // 2 if any_choice else total


def format_count(count: int) -> str:
    return str(count) if count < 2**63 else ">= 2^63"


def _facial_bits(walks: list[list[int]], target: dict[int, int]) -> int:
    bits = 0
    for w in walks:
        mask = 0
        for d in w:
            mask |= 1 << (d >> 1)
        cid = target.get(mask)
        if cid is not None:
            bits |= 1 << cid
    return bits


def _audit(walks, graph: Multigraph, facial: int, imasks: Sequence[int]) -> None:
    AUDIT["embeddings"] += 1
    if len(walks) != graph.m - graph.n + 2:
        AUDIT["euler_failures"] += 1
    for im in imasks:
        AUDIT["facial_interface_checks"] += 1
        if (facial & im).bit_count() > 2:
            AUDIT["facial_interface_violations"] += 1


def audit_embedding(graph: Multigraph, cycles, emb: RotationEmbedding) -> None:
    """Record one externally produced embedding (a solver certificate or witness) in AUDIT."""
    cs = cycles if isinstance(cycles, CycleSet) else validate(graph, cycles)
    rt = root_at(build_spqr(graph), 0)
    idx = CycleIndex(rt, cs)
    imasks = [idx.interface_mask(mu) for mu in rt.order if len(idx.interface[mu]) > 2]
    walks = face_walks(emb.rotation)
    target = {m: i for i, m in enumerate(cs.masks)}
    _audit(walks, graph, _facial_bits(walks, target), imasks)


def _prepare(graph: Multigraph, cycles) -> tuple[CycleSet, RootedSPQRTree]:
    cs = cycles if isinstance(cycles, CycleSet) else validate(graph, cycles)
    return cs, root_at(build_spqr(graph), 0)


def _realized(emb: RotationEmbedding, cs: CycleSet) -> tuple[int, ...]:
    target = {m: i for i, m in enumerate(cs.masks)}
    bits = _facial_bits(face_walks(emb.rotation), target)
    return tuple(i for i in range(len(cs)) if bits >> i & 1)


def _opt_by_embeddings(graph, cs, rt, audit: bool) -> tuple[int, RotationEmbedding]:
    target = {m: i for i, m in enumerate(cs.masks)}
    imasks = []
    if audit and len(cs):
        idx = CycleIndex(rt, cs)
        imasks = [idx.interface_mask(mu) for mu in rt.order if len(idx.interface[mu]) > 2]
    best, best_emb = -1, None
    for choice in ChoiceIterator(rt):
        emb = compose_embedding(rt, choice)
        walks = face_walks(emb.rotation)
        facial = _facial_bits(walks, target)
        if audit:
            _audit(walks, graph, facial, imasks)
        value = facial.bit_count()
        if value > best:
            best, best_emb = value, emb
    return best, best_emb


def max_feasible_subset(graph: Multigraph, cycles: Sequence[Cycle]) -> list[int]:
    """Largest set of cycle ids that can be facial together (branch and bound)."""
    k = len(cycles)
    usable = [i for i in range(k) if check_all_facial(graph, [cycles[i]])[0]]
    compat = {i: set() for i in usable}
    for a_pos, a in enumerate(usable):
        for b in usable[a_pos + 1 :]:
            if check_all_facial(graph, [cycles[a], cycles[b]])[0]:
                compat[a].add(b)
                compat[b].add(a)
    best: list[int] = []

    def color_bound(cand: list[int]) -> int:
        classes: list[list[int]] = []
        for c in cand:
            for cl in classes:
                if all(c not in compat[x] for x in cl):
                    cl.append(c)
                    break
            else:
                classes.append([c])
        return len(classes)

    def expand(chosen: list[int], cand: list[int]) -> None:
        nonlocal best
        if len(chosen) + color_bound(cand) <= len(best):
            return
        for pos, c in enumerate(cand):
            if len(chosen) + len(cand) - pos <= len(best):
                return
            trial = chosen + [c]
            if len(trial) >= 3 and not check_all_facial(graph, [cycles[i] for i in trial])[0]:
                continue
            if len(trial) > len(best):
                best = trial
            expand(trial, [d for d in cand[pos + 1 :] if d in compat[c]])

    order = sorted(usable, key=lambda i: (-len(compat[i]), i))
    expand([], order)
    return sorted(best)


def brute_opt(graph: Multigraph, cycles, *, budget: int | None = None, method: str = "auto", audit: bool = True) -> Solution:
    """Optimum by exhaustive search.

    ``method`` is ``"embeddings"`` (enumerate every embedding), ``"subsets"``
    (largest simultaneously facial subset) or ``"auto"``, which picks the
    smaller search space.  The budget caps the embedding count, and in
    ``"auto"`` also the 2^|C| subset space.
    """
    start = time.perf_counter()
    budget = default_budget() if budget is None else budget
    cs, rt = _prepare(graph, cycles)
    count = len(ChoiceIterator(rt))
    if method == "auto":
        subset_cost = 2 ** min(len(cs), 60)
        if count <= SMALL_CHOICE_SPACE or (count <= budget and count < subset_cost):
            method = "embeddings"
        elif subset_cost <= budget:
            method = "subsets"
        else:
            raise BudgetExceeded(f"{format_count(count)} embeddings exceed budget {budget}")
    if method == "embeddings":
        if count > budget:
            raise BudgetExceeded(f"{format_count(count)} embeddings exceed budget {budget}")
        value, emb = _opt_by_embeddings(graph, cs, rt, audit)
    elif method == "subsets":
        best = max_feasible_subset(graph, cs.cycles)
        ok, emb = check_all_facial(graph, [cs[i] for i in best])
        assert ok
        value = len(_realized(emb, cs))
    else:
        raise ValueError(f"unknown oracle method {method!r}")
    realized = _realized(emb, cs)
    assert len(realized) == value
    return Solution(value, emb, realized, "oracle", 1.0, f"exhaustive ({method})", time.perf_counter() - start)


def brute_feasible(graph: Multigraph, cycles, *, budget: int | None = None) -> tuple[bool, RotationEmbedding | None]:
    """True iff some enumerated embedding makes every given cycle facial."""
    budget = default_budget() if budget is None else budget
    cs, rt = _prepare(graph, cycles)
    it = ChoiceIterator(rt)
    if len(it) > budget:
        raise BudgetExceeded(f"{format_count(len(it))} embeddings exceed budget {budget}")
    need = set(cs.masks)
    for choice in it:
        emb = compose_embedding(rt, choice)
        walks = face_walks(emb.rotation)
        masks = set()
        for w in walks:
            mask = 0
            for d in w:
                mask |= 1 << (d >> 1)
            masks.add(mask)
        if need <= masks:
            return True, emb
    return False, None


def brute_table(rt: RootedSPQRTree, idx: CycleIndex, mu: int, *, budget: int | None = None) -> dict[frozenset[int], float]:
    """T[mu, I] for every I in I(mu), by enumerating embeddings of pert(mu).

    Faces of G lying entirely inside pert(mu) are the faces of pert(mu) plus
    parent edge that avoid the parent edge; the two faces that also use edges
    outside pert(mu) flank the parent edge.
    """
    budget = default_budget() if budget is None else budget
    sub = [nu for nu in rt.subtree(mu) if rt.kind(nu) in (P, R)]
    it = ChoiceIterator(rt, sub, dedupe_mirror=False)
    if len(it) > budget:
        raise BudgetExceeded(f"{format_count(len(it))} embeddings of pert({mu}) exceed budget {budget}")
    graph = rt.graph
    pert = rt.pert_mask[mu]
    masks = idx.cs.masks
    inside = {m: i for i, m in enumerate(masks) if m & pert == m}
    iface = idx.interface[mu]
    choices = interface_choices(iface)
    table = {I: NEG_INF for I in choices}
    imasks = [idx.interface_mask(nu) for nu in rt.order if len(idx.interface[nu]) > 2]
    full_target = {m: i for i, m in enumerate(masks)}
    for choice in it:
        emb = compose_embedding(rt, choice)
        walks = face_walks(emb.rotation)
        _audit(walks, graph, _facial_bits(walks, full_target), imasks)
        count_bits = 0
        sides: list[set[int]] = []
        for w in walks:
            mask = 0
            for d in w:
                mask |= 1 << (d >> 1)
            if mask & pert == mask:
                cid = inside.get(mask)
                if cid is not None:
                    count_bits |= 1 << cid
            elif mask & pert:
                path = mask & pert
                sides.append({c for c in iface if masks[c] & pert == path})
        value = count_bits.bit_count()
        assert len(sides) == 2, "pertinent graph must be flanked by exactly two faces"
        a, b = sides
        for I in choices:
            if value <= table[I]:
                continue
            items = sorted(I)
            if not items:
                ok = True
            elif len(items) == 1:
                ok = items[0] in a or items[0] in b
            else:
                x, y = items
                ok = (x in a and y in b) or (x in b and y in a)
            if ok:
                table[I] = value
    return table
