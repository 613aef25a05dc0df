"""Command-line interface.

Exit status: 0 on success, 1 when an input is invalid or a flip set is
rejected, 2 when an internal check fails, 64 on bad usage.  Summaries go
to stdout as ``key=value`` pairs.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bigflip, cover, morph as morphing, outerplane as outer
from .core import (
    PostconditionError,
    Triangulation,
    TriangulationError,
    canonical_code,
    icosahedron,
    is_isomorphic,
    k4,
    octahedron,
    parse_tri,
    random_triangulation,
    read_tri,
    require_valid,
    serialize_tri,
    standard,
)
from .figure import to_dot, to_svg
from .flips import FlipSequence, check_flipset, flip, parse_jsonl, read_flipset, serialize_flipset
from .separating import nesting_depth, separating_triangles

EXIT_OK, EXIT_DOMAIN, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def code(T: Triangulation, reflect: bool = False) -> str:
    """Short fingerprint of the unlabelled embedding."""
    return hashlib.sha1(canonical_code(T, reflect)).hexdigest()[:16]


def _summary(**kv) -> None:
    parts = []
    for k, v in kv.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, float):
            v = f"{v:.3f}"
        parts.append(f"{k}={v}")
    print(" ".join(parts))


def _write_tri(T: Triangulation, path) -> None:
    require_valid(T)
    text = serialize_tri(T)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    Path(path).write_text(text)
    require_valid(read_tri(path))


def _write_text(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _figures(args, T: Triangulation, sets) -> None:
    if getattr(args, "svg", None):
        Path(args.svg).write_text(to_svg(T, sets))
    if getattr(args, "dot", None):
        Path(args.dot).write_text(to_dot(T, sets))


# -- commands ---------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.outer is not None or args.tight_tree is not None:
        if args.outer is not None:
            O = outer.random_outerplane(args.outer, args.seed)
        else:
            O = outer.tight_tree_family(args.tight_tree)
        outer.require_valid_outer(O)
        _write_text(outer.serialize_outer(O), args.output)
        if args.output not in (None, "-"):
            outer.require_valid_outer(outer.read_outer(args.output))
        return EXIT_OK
    if args.standard is not None:
        T = standard(args.standard)
    elif args.random is not None:
        T = random_triangulation(args.random, args.seed)
    elif args.named is not None:
        T = {"k4": k4, "octahedron": octahedron, "icosahedron": icosahedron}[args.named]()
    elif args.seven_family is not None:
        T, _ = bigflip.seven_family(read_tri(args.seven_family))
    else:
        raise UsageError("choose one of --standard, --random, --named, --seven-family, --outer, --tight-tree")
    _write_tri(T, args.output)
    return EXIT_OK


def _validate_one(path: str) -> tuple[str, bool, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        return path, False, str(exc)
    try:
        if path.endswith(".outer"):
            outer.parse_outer(text)
        else:
            parse_tri(text)
    except TriangulationError as exc:
        return path, False, str(exc)
    return path, True, ""


def cmd_validate(args) -> int:
    if args.jobs > 1 and len(args.inputs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_validate_one, args.inputs))
    else:
        results = [_validate_one(p) for p in args.inputs]
    bad = 0
    for path, ok, msg in results:
        _summary(file=path, valid=ok)
        if not ok:
            bad += 1
            print(f"  {msg}", file=sys.stderr)
    return EXIT_OK if bad == 0 else EXIT_DOMAIN


def cmd_stats(args) -> int:
    T = read_tri(args.input)
    tris = separating_triangles(T)
    degs = [T.degree(v) for v in range(T.n)]
    _summary(n=T.n, edges=T.num_edges, min_degree=min(degs), max_degree=max(degs),
             dominant=len(morphing.dominant_vertices(T)), separating_triangles=len(tris),
             max_nesting=nesting_depth(tris), code=code(T))
    return EXIT_OK


def cmd_check_flipset(args) -> int:
    T = read_tri(args.graph)
    S = read_flipset(args.flipset)
    rep = check_flipset(T, S)
    _figures(args, T, [S])
    _summary(edges=len(S), flippable=rep.ok, violations=len(rep.violations))
    for v in rep.violations:
        print(f"  {v}")
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_apply(args) -> int:
    T = read_tri(args.graph)
    if args.sequence:
        steps = parse_jsonl(Path(args.sequence).read_text())
    else:
        steps = [read_flipset(args.flipset)]
    seq = FlipSequence(T)
    for k, S in enumerate(steps):
        rep = check_flipset(seq.end, S)
        if not rep.ok:
            print(f"step={k} {rep}", file=sys.stderr)
            return EXIT_DOMAIN
        seq.step(S)
    if args.output:
        _write_tri(seq.end, args.output)
    _summary(steps=len(seq), flipped=seq.total_flipped, code=code(seq.end))
    return EXIT_OK


def cmd_four_connect(args) -> int:
    T = read_tri(args.input)
    if args.three:
        sets = cover.three_disjoint_flips(T)
        for k, S in enumerate(sets, 1):
            U = require_valid(flip(T, S))
            if separating_triangles(U):
                raise PostconditionError(f"set {k} leaves a separating triangle")
            if args.flips:
                Path(f"{args.flips}.{k}").write_text(serialize_flipset(S))
            _summary(set=k, flips=len(S), separating_triangles=0)
        _figures(args, T, list(sets))
        return EXIT_OK
    S, U = cover.four_connectify(T)
    if args.flips:
        Path(args.flips).write_text(serialize_flipset(S))
    else:
        sys.stdout.write(serialize_flipset(S))
    if args.output:
        _write_tri(U, args.output)
    _figures(args, T, [S])
    _summary(n=T.n, flips=len(S), separating_triangles=len(separating_triangles(U)), code=code(U))
    return EXIT_OK


def cmd_hamiltonize(args) -> int:
    T = read_tri(args.input)
    S, U, cyc = cover.hamiltonize(T)
    if args.flips:
        Path(args.flips).write_text(serialize_flipset(S))
    if args.output:
        _write_tri(U, args.output)
    print("cycle: " + " ".join(map(str, cyc)))
    _summary(n=T.n, flips=len(S), cycle_length=len(cyc))
    return EXIT_OK


def cmd_morph(args) -> int:
    A, B = read_tri(args.source), read_tri(args.target)
    reflect = args.iso_mode == "reflect"
    seq = morphing.morph(A, B, reflect=reflect)
    if args.verify:
        end = seq.replay(verify=True)
        if is_isomorphic(end, B, reflect) is None:
            raise PostconditionError("replayed endpoint is not isomorphic to the target")
    _write_text(seq.to_jsonl(), args.output)
    kv = dict(n=A.n, steps=len(seq), code=code(seq.end))
    if args.stats:
        kv.update(flipped=seq.total_flipped, step_bound=f"{morphing.morph_bound(A.n):.1f}",
                  flips_per_vertex=seq.total_flipped / A.n)
    _summary(**kv)
    return EXIT_OK


def cmd_outer_morph(args) -> int:
    A, B = outer.read_outer(args.source), outer.read_outer(args.target)
    seq = outer.outer_morph(A, B)
    if args.verify:
        if outer.outer_isomorphism(seq.replay(), B) is None:
            raise PostconditionError("replayed endpoint is not isomorphic to the target")
    _write_text(seq.to_jsonl(), args.output)
    bound = 4 * outer.C1 * math.log2(A.n)
    _summary(n=A.n, steps=len(seq), flipped=seq.total_flipped, step_bound=f"{bound:.1f}")
    return EXIT_OK


def cmd_maxflip(args) -> int:
    if args.seven_family:
        T, S = bigflip.seven_family(read_tri(args.seven_family))
        if args.output_graph:
            _write_tri(T, args.output_graph)
    else:
        if not args.input:
            raise UsageError("an input triangulation is required")
        T = read_tri(args.input)
        S = None
    lower = bigflip.large_flip(T) if T.n >= 4 else []
    if S is None or len(lower) > len(S):
        S = lower
    exact = "skipped"
    if args.exact:
        res = bigflip.exact_max_flip(T, time_limit=args.time_limit, lower=len(S))
        if res.exact:
            exact = str(max(res.value, len(S)))
            if res.value > len(S):
                S = res.witness
        else:
            exact = "timeout"
    if not check_flipset(T, S).ok:
        raise PostconditionError("witness is not flippable")
    if args.output:
        Path(args.output).write_text(serialize_flipset(S))
    _figures(args, T, [S])
    _summary(n=T.n, msf_lower=len(lower), witness=len(S), msf_exact=exact,
             bound=math.ceil((T.n - 2) / 3))
    return EXIT_OK


def cmd_iso(args) -> int:
    A, B = read_tri(args.first), read_tri(args.second)
    reflect = args.iso_mode == "reflect"
    phi = is_isomorphic(A, B, reflect)
    _summary(isomorphic=phi is not None, mode=args.iso_mode)
    if phi is not None and args.map:
        print("map: " + " ".join(str(phi[v]) for v in range(A.n)))
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simflip", description="Simultaneous diagonal flips in plane triangulations.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fig(q):
        q.add_argument("--svg", help="write a drawing with the flip set dashed")
        q.add_argument("--dot")

    g = sub.add_parser("generate", help="write a triangulation or outerplane graph")
    g.add_argument("--standard", type=int, metavar="N")
    g.add_argument("--random", type=int, metavar="N")
    g.add_argument("--named", choices=["k4", "octahedron", "icosahedron"])
    g.add_argument("--seven-family", metavar="G0")
    g.add_argument("--outer", type=int, metavar="N", help="random outerplane graph")
    g.add_argument("--tight-tree", type=int, metavar="DEPTH")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("validate", help="check .tri or .outer files")
    v.add_argument("inputs", nargs="+")
    v.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("stats", help="size, degrees and separating triangles")
    s.add_argument("input")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("check-flipset", help="test a set for simultaneous flippability")
    c.add_argument("graph")
    c.add_argument("flipset")
    fig(c)
    c.set_defaults(func=cmd_check_flipset)

    a = sub.add_parser("apply", help="apply a flip set or a JSON-lines sequence")
    a.add_argument("graph")
    a.add_argument("flipset", nargs="?")
    a.add_argument("--sequence")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_apply)

    f = sub.add_parser("four-connect", help="one flip to a 4-connected triangulation")
    f.add_argument("input")
    f.add_argument("--three", action="store_true", help="three disjoint flip sets")
    f.add_argument("--flips", help="flip set output path")
    f.add_argument("-o", "--output")
    fig(f)
    f.set_defaults(func=cmd_four_connect)

    h = sub.add_parser("hamiltonize", help="one flip, then a Hamiltonian cycle")
    h.add_argument("input")
    h.add_argument("--flips")
    h.add_argument("-o", "--output")
    h.set_defaults(func=cmd_hamiltonize)

    m = sub.add_parser("morph", help="flip sequence between two triangulations")
    m.add_argument("source")
    m.add_argument("target")
    m.add_argument("-o", "--output")
    m.add_argument("--verify", action="store_true")
    m.add_argument("--stats", action="store_true")
    m.add_argument("--iso-mode", choices=["oriented", "reflect"], default="oriented")
    m.set_defaults(func=cmd_morph)

    om = sub.add_parser("outer-morph", help="flip sequence between two outerplane graphs")
    om.add_argument("source")
    om.add_argument("target")
    om.add_argument("-o", "--output")
    om.add_argument("--verify", action="store_true")
    om.set_defaults(func=cmd_outer_morph)

    x = sub.add_parser("maxflip", help="large flippable sets")
    x.add_argument("input", nargs="?")
    mode = x.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--construct", action="store_true", help="constructive bound only (default)")
    x.add_argument("--seven-family", metavar="G0")
    x.add_argument("--output-graph", help="where to write the seven-family graph")
    x.add_argument("--time-limit", type=float, default=60.0)
    x.add_argument("-o", "--output", help="witness flip set path")
    fig(x)
    x.set_defaults(func=cmd_maxflip)

    i = sub.add_parser("iso", help="embedding isomorphism test")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--iso-mode", choices=["oriented", "reflect"], default="oriented")
    i.add_argument("--map", action="store_true", help="print the vertex map")
    i.set_defaults(func=cmd_iso)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "apply" and not (args.flipset or args.sequence):
        parser.error("apply needs a flip set or --sequence")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"simflip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PostconditionError as exc:
        print(f"simflip: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (TriangulationError, OSError) as exc:
        print(f"simflip: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
