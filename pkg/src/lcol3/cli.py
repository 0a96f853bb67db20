"""Command-line front end: instance file parsing, result emission, and the
solve / verify / check-promise / generate / oracle / bench subcommands.

Instance grammar (one item per line, `c` lines are comments)::

    p lcol <n> <m>
    e <u> <v>          # 1-indexed, undirected, no duplicates
    l <v> <digits>     # optional; digits over {1,2,3}, non-empty, ascending

Exit codes: 0 = decided (SAT or UNSAT), 2 = promise violation (INVALID),
1 = usage, parse, or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .engine import FULL_MASK, colours_of, solve, verify_colouring
from .graph import Bipartition, bipartite_check, build_graph, \
    connected_components, induced_subgraph
from .recognition import (PromiseViolation, check_promise,
                          recognize_blownup_c7, shortest_odd_cycle)
from .skeleton import build_skeleton, skeleton_report
from .testkit import GenSpec, generate, oracle_solve


class ParseError(ValueError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InstanceSyntaxError(ParseError):
    pass


class OutOfRangeError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class DuplicateListLineError(ParseError):
    pass


class EmptyListError(ParseError):
    pass


def parse_instance(text):
    """Parse an instance file into a Graph and per-vertex colour masks."""
    n = None
    m_declared = None
    edges = []
    seen_edges = set()
    masks = None
    listed = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise InstanceSyntaxError(lineno, "repeated problem line")
            if len(parts) != 4 or parts[1] != "lcol":
                raise InstanceSyntaxError(lineno, "expected 'p lcol <n> <m>'")
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise InstanceSyntaxError(lineno, "non-integer problem sizes") from None
            if n < 0 or m_declared < 0:
                raise InstanceSyntaxError(lineno, "negative problem sizes")
            masks = [FULL_MASK] * n
        elif parts[0] == "e":
            if n is None:
                raise InstanceSyntaxError(lineno, "edge before problem line")
            if len(parts) != 3:
                raise InstanceSyntaxError(lineno, "expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise InstanceSyntaxError(lineno, "non-integer endpoints") from None
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise OutOfRangeError(lineno, f"vertex outside 1..{n}")
            if u == v:
                raise InstanceSyntaxError(lineno, "self-loop")
            key = (u, v) if u < v else (v, u)
            if key in seen_edges:
                raise DuplicateEdgeError(lineno, f"duplicate edge {u} {v}")
            seen_edges.add(key)
            edges.append((u - 1, v - 1))
        elif parts[0] == "l":
            if n is None:
                raise InstanceSyntaxError(lineno, "list before problem line")
            if len(parts) != 3:
                raise InstanceSyntaxError(lineno, "expected 'l <v> <digits>'")
            try:
                v = int(parts[1])
            except ValueError:
                raise InstanceSyntaxError(lineno, "non-integer vertex") from None
            if not 1 <= v <= n:
                raise OutOfRangeError(lineno, f"vertex outside 1..{n}")
            if v in listed:
                raise DuplicateListLineError(lineno, f"second list for vertex {v}")
            listed.add(v)
            digits = parts[2]
            if not digits:
                raise EmptyListError(lineno, "empty colour list")
            mask = 0
            prev = 0
            for ch in digits:
                if ch not in "123":
                    raise InstanceSyntaxError(lineno, f"colour '{ch}' outside {{1,2,3}}")
                if int(ch) <= prev:
                    raise InstanceSyntaxError(lineno, "digits must be ascending")
                prev = int(ch)
                mask |= 1 << (int(ch) - 1)
            if mask == 0:
                raise EmptyListError(lineno, "empty colour list")
            masks[v - 1] = mask
        else:
            raise InstanceSyntaxError(lineno, f"unknown line type '{parts[0]}'")
    if n is None:
        raise InstanceSyntaxError(0, "missing problem line")
    if len(edges) != m_declared:
        raise InstanceSyntaxError(0, f"problem line declares {m_declared} edges, "
                                     f"found {len(edges)}")
    return build_graph(n, edges), masks


def emit_instance(graph, masks=None):
    """Deterministic instance text; parse(emit(x)) == x."""
    lines = [f"p lcol {graph.n} {graph.m}"]
    for u, v in graph.edges():
        lines.append(f"e {u + 1} {v + 1}")
    if masks is not None:
        for v, m in enumerate(masks):
            if m != FULL_MASK:
                digits = "".join(str(c) for c in colours_of(m))
                lines.append(f"l {v + 1} {digits}")
    return "\n".join(lines) + "\n"


def _witness_lines(violation):
    verts = " ".join(str(v + 1) for v in violation.vertices)
    lines = [f"witness {violation.kind} {verts}".rstrip()]
    if violation.note:
        lines.append(f"note {violation.note}")
    return lines


def emit_result(outcome, fmt="text", include_stats=False):
    """Render an Outcome; byte-deterministic apart from the optional stats
    (whose millis field is wall-clock time)."""
    if fmt == "text":
        if outcome.is_sat:
            lines = ["SAT"]
            lines.extend(f"v {v + 1} {c}" for v, c in enumerate(outcome.colouring))
        elif outcome.is_unsat:
            lines = ["UNSAT"]
        else:
            lines = ["INVALID"] + _witness_lines(outcome.violation)
        if include_stats:
            s = outcome.stats
            lines.append(f"s branches {s.branches}")
            lines.append(f"s survived {s.branches_survived}")
            lines.append(f"s propagations {s.propagations}")
            lines.append(f"s sat_instances {s.sat_instances}")
            lines.append(f"s fallback_used {s.fallback_used}")
            lines.append(f"s millis {s.millis:.3f}")
        return "\n".join(lines) + "\n"

    if fmt == "json":
        doc = {"status": "SAT" if outcome.is_sat
               else "UNSAT" if outcome.is_unsat else "INVALID"}
        if outcome.is_sat:
            doc["colouring"] = {str(v + 1): c
                                for v, c in enumerate(outcome.colouring)}
        if outcome.is_invalid:
            witness = {"kind": outcome.violation.kind,
                       "vertices": [v + 1 for v in outcome.violation.vertices]}
            if outcome.violation.note:
                witness["note"] = outcome.violation.note
            doc["witness"] = witness
        if include_stats:
            s = outcome.stats
            doc["stats"] = {"branches": s.branches,
                            "propagations": s.propagations,
                            "sat_instances": s.sat_instances,
                            "fallback_used": s.fallback_used,
                            "millis": round(s.millis, 3)}
        return json.dumps(doc) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_solve(args):
    graph, masks = parse_instance(_read(args.file))
    outcome = solve(graph, masks, mode=args.mode, parallel=args.parallel)
    fmt = "json" if args.json else "text"
    sys.stdout.write(emit_result(outcome, fmt, include_stats=args.stats))
    return 2 if outcome.is_invalid else 0


def _parse_colouring_file(text, n):
    colouring = [0] * n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line in ("SAT", "UNSAT"):
            continue
        parts = line.split()
        if parts[0] == "s":
            continue
        if parts[0] != "v" or len(parts) != 3:
            raise InstanceSyntaxError(lineno, "expected 'v <vertex> <colour>'")
        try:
            v, c = int(parts[1]), int(parts[2])
        except ValueError:
            raise InstanceSyntaxError(lineno, "non-integer fields") from None
        if not 1 <= v <= n:
            raise OutOfRangeError(lineno, f"vertex outside 1..{n}")
        if colouring[v - 1] != 0:
            raise DuplicateListLineError(lineno, f"vertex {v} coloured twice")
        colouring[v - 1] = c
    missing = [v + 1 for v, c in enumerate(colouring) if c == 0]
    if missing:
        raise InstanceSyntaxError(0, f"vertices without colour: {missing[:5]}")
    return colouring


def _cmd_verify(args):
    graph, masks = parse_instance(_read(args.file))
    colouring = _parse_colouring_file(_read(args.colouring_file), graph.n)
    if verify_colouring(graph, masks, colouring):
        print("OK")
        return 0
    print("BAD colouring (improper edge or colour outside its list)")
    return 1


def _explain_report(graph):
    report = {"promise": "ok", "components": []}
    for comp in connected_components(graph):
        sub, ids = induced_subgraph(graph, comp)
        entry = {"vertices": [v + 1 for v in ids]}
        bip = bipartite_check(sub)
        if isinstance(bip, Bipartition):
            entry["type"] = "bipartite"
            entry["sides"] = [[ids[v] + 1 for v in bip.a],
                              [ids[v] + 1 for v in bip.b]]
        else:
            cycle = shortest_odd_cycle(sub)
            entry["odd_girth"] = len(cycle)
            if len(cycle) == 5:
                sk = build_skeleton(sub, cycle)
                if isinstance(sk, PromiseViolation):
                    entry["type"] = "breach"
                else:
                    entry["type"] = "c5_skeleton"
                    entry["skeleton"] = skeleton_report(
                        sub, sk, relabel=lambda v: ids[v] + 1)
            elif len(cycle) == 7:
                dec = recognize_blownup_c7(sub, cycle)
                if isinstance(dec, PromiseViolation):
                    entry["type"] = "breach"
                else:
                    entry["type"] = "blownup_c7"
                    entry["classes"] = [[ids[v] + 1 for v in cl]
                                       for cl in dec.classes]
        report["components"].append(entry)
    return report


def _dot_dump(graph, report):
    lines = ["graph skeleton {", "  node [shape=circle];"]
    groups = {}
    for entry in report["components"]:
        sk = entry.get("skeleton")
        if not sk:
            continue
        for v in sk["anchors"]:
            groups[v] = "C"
        for name in ("t", "d"):
            for idx, verts in sk[name].items():
                for v in verts:
                    groups[v] = f"{name.upper()}{idx}"
        for v in sk["w"]:
            groups[v] = "W"
    for v in range(graph.n):
        label = groups.get(v + 1, "")
        suffix = f' [xlabel="{label}"]' if label else ""
        lines.append(f"  {v + 1}{suffix};")
    for u, v in graph.edges():
        lines.append(f"  {u + 1} -- {v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_check_promise(args):
    graph, _ = parse_instance(_read(args.file))
    violation = check_promise(graph)
    if violation is not None:
        print("INVALID")
        for line in _witness_lines(violation):
            print(line)
        return 2
    if args.explain:
        report = _explain_report(graph)
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
        if args.dot:
            sys.stdout.write(_dot_dump(graph, report))
    else:
        print("OK")
    return 0


def _cmd_generate(args):
    sizes = tuple(int(x) for x in args.classes.split(",")) if args.classes else None
    spec = GenSpec(kind=args.kind, seed=args.seed, class_sizes=sizes,
                   n=args.n, target_edges=args.edges, scale=args.scale,
                   lists=args.lists)
    graph, masks = generate(spec)
    text = emit_instance(graph, masks)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_oracle(args):
    graph, masks = parse_instance(_read(args.file))
    colouring = oracle_solve(graph, masks)
    if colouring is None:
        print("UNSAT")
    else:
        print("SAT")
        for v, c in enumerate(colouring):
            print(f"v {v + 1} {c}")
    return 0


def _cmd_bench(args):
    if args.suite == "scale":
        cases = [("blownup_c5_n2000", GenSpec("blownup_c5", seed=7,
                                              class_sizes=(400,) * 5))]
    else:
        cases = [
            ("blownup_c5_small", GenSpec("blownup_c5", seed=1, class_sizes=(3,) * 5)),
            ("blownup_c7_small", GenSpec("blownup_c7", seed=2, class_sizes=(2,) * 7)),
            ("skeleton_mid", GenSpec("skeleton_built", seed=3, scale=30)),
            ("skeleton_lists", GenSpec("skeleton_built", seed=4, scale=30,
                                       lists="random")),
        ]
    for name, spec in cases:
        graph, masks = generate(spec)
        t0 = time.perf_counter()
        outcome = solve(graph, masks, mode="trust", parallel=args.parallel)
        elapsed = (time.perf_counter() - t0) * 1000.0
        status = "SAT" if outcome.is_sat else "UNSAT" if outcome.is_unsat else "INVALID"
        s = outcome.stats
        print(f"{name} n={graph.n} m={graph.m} {status} {elapsed:.1f}ms "
              f"branches={s.branches} propagations={s.propagations} "
              f"sat_instances={s.sat_instances} fallback={s.fallback_used}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(prog="lcol3", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide list 3-colourability of an instance")
    p.add_argument("file")
    p.add_argument("--mode", choices=("trust", "verify"), default="trust")
    p.add_argument("--json", action="store_true")
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a colouring file against an instance")
    p.add_argument("file")
    p.add_argument("colouring_file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-promise",
                       help="test the triangle-free / P7-free promise")
    p.add_argument("file")
    p.add_argument("--explain", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_check_promise)

    p = sub.add_parser("generate", help="emit a generated instance")
    p.add_argument("--kind", required=True,
                   choices=("blownup_c5", "blownup_c7", "skeleton_built",
                            "random_rejection"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--classes", help="comma-separated class sizes for blow-ups")
    p.add_argument("--n", type=int, help="vertex count for random_rejection")
    p.add_argument("--edges", type=int, help="edge target for random_rejection")
    p.add_argument("--scale", type=int, default=20,
                   help="size hint for skeleton_built")
    p.add_argument("--lists", choices=("full", "random"), default="full")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("oracle", help="run the brute-force oracle")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="timing suites")
    p.add_argument("--suite", choices=("smoke", "scale"), default="smoke")
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=_cmd_bench)
    return parser


def dispatch(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
