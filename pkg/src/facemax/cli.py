"""Command-line interface: solve, verify, feasible, gen, bench, render.

Exit codes: 0 success (``feasible``: yes), 1 ``feasible``: no, 2 parse or
usage error, 3 precondition violated in a forced mode, 4 oracle budget
exceeded, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import glob
import logging
import os
import sys
import time

from . import gen
from .api import solve
from .approx import DEFAULT_EPSILON
from .cycles import check_all_facial
from .errors import BudgetExceeded, FacemaxError, GraphError, ParseError, PreconditionViolated
from .graph import face_walks, trace_faces
from .io import format_embedding, format_instance, parse_embedding, parse_instance, read_text, write_text
from .oracle import brute_opt
from .render import to_dot, to_svg
from .solution import Solution

log = logging.getLogger("facemax")

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3, 4, 5


def _budget(args) -> int | None:
    return args.budget


def _load_instance(path: str):
    return parse_instance(read_text(path))


def _emit_solution(args, graph, cs, sol: Solution) -> None:
    fmt = args.format
    if fmt == "dot":
        text = to_dot(graph, sol.embedding)
    elif fmt == "svg":
        text = to_svg(graph, sol.embedding, [cs.masks[i] for i in sol.realized])
    else:
        text = format_embedding(sol, graph)
    if args.output:
        write_text(args.output, text)
    elif fmt != "text":
        write_text(None, text)


def cmd_solve(args) -> int:
    graph, cs = _load_instance(args.input)
    sol = solve(graph, cs, args.mode, epsilon=args.epsilon, budget=_budget(args), r=args.r)
    print(f"value {sol.value}")
    print(f"factor {sol.factor_label}")
    print(f"theorem {sol.theorem}")
    print(f"mode {sol.mode}")
    print(f"runtime {sol.runtime:.4f}s")
    if args.format == "text" and not args.output:
        sys.stdout.write(format_embedding(sol, graph))
    else:
        _emit_solution(args, graph, cs, sol)
    return EXIT_OK


def cmd_verify(args) -> int:
    graph, cs = _load_instance(args.instance)
    text = read_text(args.embedding)
    try:
        ef = parse_embedding(text, graph)
        trace_faces(graph, ef.embedding)
    except GraphError as exc:
        print(f"mismatch: {exc}")
        return EXIT_MISMATCH
    masks = set()
    for w in face_walks(ef.embedding.rotation):
        mask = 0
        for d in w:
            mask |= 1 << (d >> 1)
        masks.add(mask)
    actual = [i for i, m in enumerate(cs.masks) if m in masks]
    claimed = sorted(ef.realized)
    problems = []
    if claimed != actual:
        missing = sorted(set(claimed) - set(actual))
        extra = sorted(set(actual) - set(claimed))
        problems.append(f"realized ids differ: claimed-but-not-facial {missing}, facial-but-unclaimed {extra}")
    value = ef.meta.get("value")
    if value is not None and value != len(actual):
        problems.append(f"value {value} but {len(actual)} cycles are facial")
    outer = ef.meta.get("outer")
    if outer and ef.embedding.outer_dart is None:
        problems.append("outer face is not a face of the embedding")
    if problems:
        for p in problems:
            print(f"mismatch: {p}")
        return EXIT_MISMATCH
    print(f"ok: {len(actual)} facial cycles")
    return EXIT_OK


def cmd_feasible(args) -> int:
    graph, cs = _load_instance(args.input)
    ok, witness = check_all_facial(graph, cs.cycles)
    if not ok:
        print("infeasible: the cycles cannot all bound faces at once")
        return EXIT_NO
    print(f"feasible: all {len(cs)} cycles can bound faces")
    sol = Solution(len(cs), witness, tuple(range(len(cs))), "feasible", 1.0, "all-facial gadget")
    if args.output or args.format != "text":
        _emit_solution(args, graph, cs, sol)
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.family
    if kind in ("from_mis", "from_hamiltonian"):
        if len(args.params) != 1:
            raise ParseError(f"{kind} takes one named graph, e.g. K4")
        inst = getattr(gen, kind)(gen.named(args.params[0]))
    elif kind == "named":
        if len(args.params) != 1:
            raise ParseError("named takes one graph name")
        g = gen.named(args.params[0])
        inst = gen.Instance(g, gen.validate(g, []), {"construction": f"named:{args.params[0]}"})
    elif kind == "random":
        if len(args.params) not in (2, 3):
            raise ParseError("random takes FAMILY N [POLICY]")
        family, n = args.params[0], int(args.params[1])
        policy = args.params[2] if len(args.params) == 3 else "faces_of_random_embedding"
        inst = gen.random_instance(family, n, policy, args.seed)
    else:
        raise ParseError(f"unknown generator {kind!r}")
    comments = [f"{k}: {v}" for k, v in inst.meta.items() if k != "source"]
    write_text(args.output, format_instance(inst.graph, inst.cycles, comments))
    return EXIT_OK


def cmd_bench(args) -> int:
    paths = sorted(glob.glob(os.path.join(args.corpus, "*.txt"))) if os.path.isdir(args.corpus) else [args.corpus]
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["instance", "n", "m", "cycles", "mode", "value", "factor", "oracle", "ratio", "ms"])
        for path in paths:
            graph, cs = _load_instance(path)
            try:
                oracle = brute_opt(graph, cs, budget=_budget(args)).value
            except BudgetExceeded:
                oracle = None
            for mode in modes:
                t0 = time.perf_counter()
                try:
                    sol = solve(graph, cs, mode, epsilon=args.epsilon, budget=_budget(args), r=args.r)
                except PreconditionViolated:
                    writer.writerow([os.path.basename(path), graph.n, graph.m, len(cs), mode, "n/a", "", oracle, "", ""])
                    continue
                ms = (time.perf_counter() - t0) * 1000
                ratio = "" if oracle in (None, 0) else f"{sol.value / oracle:.4f}"
                writer.writerow([os.path.basename(path), graph.n, graph.m, len(cs), mode, sol.value, sol.factor_label, oracle, ratio, f"{ms:.1f}"])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_render(args) -> int:
    ef = parse_embedding(read_text(args.embedding))
    trace_faces(ef.graph, ef.embedding)
    fmt = "svg" if args.format == "text" else args.format
    if fmt == "dot":
        text = to_dot(ef.graph, ef.embedding)
    else:
        text = to_svg(ef.graph, ef.embedding)
    write_text(args.output, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="facemax", description="Embeddings of planar graphs that maximize facial cycles.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="slack of the (4+eps) approximation")
        p.add_argument("--budget", type=int, default=None, help="oracle embedding budget (env FACEMAX_BUDGET)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--output", default=None)
        p.add_argument("--r", type=int, default=None, help="intersection bound for the sp-fpt mode")
        if fmt:
            p.add_argument("--format", choices=("text", "dot", "svg", "csv"), default="text")

    p = sub.add_parser("solve", help="maximize facial cycles")
    p.add_argument("input")
    p.add_argument("--mode", choices=("auto", "exact", "sp-fpt", "sp-two-shared", "approx", "oracle"), default="auto")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check an embedding file against an instance")
    p.add_argument("instance")
    p.add_argument("embedding")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("feasible", help="can all cycles bound faces at once?")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("family", help="from_mis | from_hamiltonian | named | random")
    p.add_argument("params", nargs="*")
    common(p, fmt=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run solvers over a corpus and write CSV rows")
    p.add_argument("corpus")
    p.add_argument("--modes", default="auto,approx")
    common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw an embedding file")
    p.add_argument("embedding")
    common(p)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_PARSE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionViolated as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FacemaxError, OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
