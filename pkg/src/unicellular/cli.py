"""Command-line front end.

Exit codes: 0 success (or claim holds), 1 claim violated, 2 usage error or
infeasible request.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from unicellular import coding, homology, surgery, symplectic
from unicellular.coding import CodingError, InfeasibleError, parse_coding

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(t) for t in text.split(",") if t.strip()))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}")


def _emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text if text is not None else obj)


def _matrix_text(rows) -> str:
    return "\n".join(" ".join(str(int(b)) for b in row) for row in rows)


# -- plain commands ---------------------------------------------------------

def cmd_analyze(args) -> int:
    c = parse_coding(args.coding)
    info = coding.analyze(c).to_json(c)
    _emit(info, args.format, f"genus {info['genus']}  V={info['vertices']}  E={info['edges']}  "
                             f"degrees {tuple(info['degrees'])}")
    return EXIT_OK


def cmd_canon(args) -> int:
    c = coding.canonical_form(parse_coding(args.coding))
    _emit({"canonical": str(c)}, args.format, str(c))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    maps = sorted(coding.enumerate_maps(args.genus, args.degree, threads=args.threads),
                  key=coding.canonical_key)
    words = [str(c) for c in maps]
    _emit({"genus": args.genus, "degrees": list(args.degree), "count": len(words), "maps": words},
          args.format, "\n".join(words + [f"# {len(words)} maps"]))
    return EXIT_OK


def cmd_surgeries(args) -> int:
    c = parse_coding(args.coding)
    rows = [{"x": str(x), "y": str(y), "result": str(r)} for x, y, r in surgery.all_surgeries(c)]
    _emit(rows, args.format, "\n".join(f"{r['x']} {r['y']} -> {r['result']}" for r in rows))
    return EXIT_OK


def cmd_graph(args) -> int:
    seed = parse_coding(args.seed) if args.seed else None
    g = surgery.build_surgery_graph(args.genus, args.degree, args.mode, seed, threads=args.threads)
    if args.format == "dot":
        sys.stdout.write(g.to_dot())
    elif args.format == "json":
        print(json.dumps(g.to_json(), sort_keys=True))
    else:
        m = surgery.graph_metrics(g)
        print(f"{m['nodes']} nodes, {m['edges']} edges, {m['components']} component(s), "
              f"diameters {m['diameters']}")
    return EXIT_OK


def cmd_invariant(args) -> int:
    c = parse_coding(args.coding)
    form = homology.intersection_form(c)
    v = homology.graph_class(c, form)
    _emit({"basis_edges": list(v.basis_edges), "graph_class": list(v.bits)}, args.format,
          " ".join(map(str, v.bits)))
    return EXIT_OK


def cmd_form(args) -> int:
    c = parse_coding(args.coding)
    out = homology.homology_json(c)
    _emit(out, args.format, _matrix_text(out["form"]))
    return EXIT_OK


def cmd_curves(args) -> int:
    dec = coding.constituent_curves(parse_coding(args.coding))
    info = {
        "curves": [list(c) for c in dec.curves],
        "self_intersections": list(dec.self_intersections),
        "crossing_matrix": [list(r) for r in dec.crossing_matrix],
        "one_simple": dec.one_simple(),
    }
    lines = [f"curve {i}: edges {list(c)}  self-crossings {s}  1-simple {o}"
             for i, (c, s, o) in enumerate(zip(dec.curves, dec.self_intersections, dec.one_simple()))]
    _emit(info, args.format, "\n".join(lines + [_matrix_text(dec.crossing_matrix)]))
    return EXIT_OK


def cmd_chain(args) -> int:
    c = coding.chain_collection(args.genus)
    info = coding.analyze(c).to_json(c)
    _emit(info, args.format, str(c))
    return EXIT_OK


def cmd_reduce(args) -> int:
    v = args.vector
    g = args.genus if args.genus else len(v) // 2
    word = symplectic.vector_reduce(v, g)
    target = symplectic.basis_vector(g, "x1")
    ok = symplectic.apply_move_word(word, v) == target
    _emit([m.to_json() for m in word], args.format,
          "\n".join(f"{m.tag:10s} power {m.power:+d}  class {list(m.cls)}" for m in word)
          + f"\n# {len(word)} moves, reaches x1: {ok}")
    return EXIT_OK if ok else EXIT_FAIL


# -- verify -----------------------------------------------------------------

def _graph_for(genus: int, degrees, threads: int = 1):
    try:
        return surgery.build_surgery_graph(genus, degrees, "full", threads=threads)
    except InfeasibleError:
        return surgery.build_surgery_graph(genus, degrees, "bfs")


def verify_connectivity(args) -> tuple[bool, dict]:
    degrees = args.degree or (4,) * (2 * args.genus - 1)
    g = _graph_for(args.genus, degrees, args.threads)
    m = surgery.graph_metrics(g)
    return m["components"] == 1, {"genus": args.genus, "degrees": list(degrees), "mode": g.mode, **m}


def verify_double_surgery(args) -> tuple[bool, dict]:
    g = _graph_for(args.genus, (4,) * (2 * args.genus - 1), args.threads)
    checked = failures = 0
    for node in g.nodes:
        for x, y, _ in surgery.all_surgeries(node):
            checked += 1
            failures += not surgery.double_surgery_identity(node, x, y)
    return checked > 0 and failures == 0, {"genus": args.genus, "nodes": len(g.nodes), "mode": g.mode,
                                          "triples": checked, "failures": failures}


def verify_stabilizer(args) -> tuple[bool, dict]:
    if args.full_span:
        classes, label = symplectic.allowed_span_classes(args.genus), "full-span"
    else:
        classes, label = symplectic.humphries_classes(args.genus), "humphries"
    res = symplectic.stabilizer_check(args.genus, classes)
    return res["equal"], {"genus": args.genus, "generators": label, "count": len(classes), **res}


def verify_orbit(args) -> tuple[bool, dict]:
    g = args.genus
    size = symplectic.orbit_of(symplectic.basis_vector(g, "x1"), symplectic.full_transvections(g))
    return size == 4 ** g - 1, {"genus": g, "orbit": size, "expected": 4 ** g - 1}


def verify_invariant_nonzero(args) -> tuple[bool, dict]:
    g = args.genus
    maps = list(_graph_for(g, (4,) * (2 * g - 1), args.threads).nodes) if g <= 2 else []
    maps.append(coding.chain_collection(g))
    bad = []
    for c in maps:
        try:
            form = homology.intersection_form(c)
            homology.graph_class(c, form)
        except RuntimeError as exc:
            bad.append({"coding": str(c), "error": str(exc)})
    return not bad, {"genus": g, "maps": len(maps), "violations": bad}


VERIFIERS: dict[str, Callable] = {
    "connectivity": verify_connectivity,
    "double-surgery": verify_double_surgery,
    "stabilizer": verify_stabilizer,
    "orbit": verify_orbit,
    "invariant-nonzero": verify_invariant_nonzero,
}


def cmd_verify(args) -> int:
    start = time.perf_counter()
    ok, detail = VERIFIERS[args.claim](args)
    detail["elapsed_s"] = round(time.perf_counter() - start, 3)
    print(f"{'PASS' if ok else 'FAIL'} {args.claim}")
    print(json.dumps(detail, sort_keys=True))
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unicellular", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, formats=("text", "json")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--threads", type=int, default=1)
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in [
        ("analyze", cmd_analyze, "genus, vertices and degrees of a coding"),
        ("canon", cmd_canon, "canonical form of a coding"),
        ("surgeries", cmd_surgeries, "all surgeries on a coding"),
        ("invariant", cmd_invariant, "mod-2 surgery invariant in fundamental-cycle coordinates"),
        ("form", cmd_form, "mod-2 intersection form"),
        ("curves", cmd_curves, "constituent curves of a 4-valent coding"),
    ]:
        add(name, func, help_).add_argument("coding")

    sp = add("enumerate", cmd_enumerate, "enumerate unicellular maps")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--degree", type=_degrees, required=True)

    sp = add("graph", cmd_graph, "build a surgery graph", ("text", "json", "dot"))
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--degree", type=_degrees, required=True)
    sp.add_argument("--mode", choices=("full", "bfs"), default="full")
    sp.add_argument("--seed")

    sp = add("chain", cmd_chain, "chain collection of 2g curves")
    sp.add_argument("--genus", type=int, required=True)

    sp = add("reduce", cmd_reduce, "reduce a primitive vector = x1 mod 2 to x1")
    sp.add_argument("vector", type=_vector)
    sp.add_argument("--genus", type=int)

    sp = add("verify", cmd_verify, "check one of the structural claims")
    sp.add_argument("claim", choices=sorted(VERIFIERS))
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--degree", type=_degrees)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--full-span", action="store_true")
    group.add_argument("--humphries", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}; try `graph --mode bfs`", file=sys.stderr)
        return EXIT_USAGE
    except (CodingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
