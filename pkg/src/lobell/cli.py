"""Command-line interface.

Every error path exits with status 2 and writes only to standard error.
The environment variable LOBELL_PRECISION_BITS sets the starting interval
precision (default 64).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .classifier import classify, classify_range
from .covers import find_coloring, format_coloring, parse_coloring, verify_coloring
from .diagram import assemble_gram, parse_diagram, serialize
from .errors import LobellError
from .expr import element_to_text
from .family import (
    antiprism_ratio,
    delta_n,
    lobell_faces,
    pnk_diagram,
    systole_candidate,
    tn_diagram,
    tn_text,
    trace_field_facts,
)
from .report import decimal_string, format_report, format_table, table_to_dict, to_json


class UsageError(LobellError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected A..B or a single integer")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    return list(range(lo, hi + 1))


def cmd_classify(args) -> int:
    if (args.file is None) == (args.n is None):
        raise UsageError("give either a diagram file or --n")
    if args.file is not None:
        d = parse_diagram(_read(args.file))
        label = None
    else:
        d = tn_diagram(args.n)
        label = args.n
    dim = args.dim if args.dim is not None else (3 if args.n is not None else None)
    rep = classify(d, dim=dim, label_n=label, digits=args.digits)
    sys.stdout.write(to_json(rep) if args.json else format_report(rep))
    return 0


def cmd_gram(args) -> int:
    d = tn_diagram(args.n) if args.k is None else pnk_diagram(args.n, args.k)
    tower, G = assemble_gram(d)
    out = [f"# conductor {tower.conductor}, field dimension {tower.dimension}"]
    for i, r in enumerate(tower.radicands, start=1):
        out.append(f"# sqrt r_{i} with r_{i} = {element_to_text(r)}")
    for i in range(G.dim):
        for j in range(i, G.dim):
            v = G[i, j]
            if not v.is_zero():
                out.append(f"g {i + 1} {j + 1} = {element_to_text(v)}")
    print("\n".join(out))
    return 0


def cmd_diagram(args) -> int:
    if args.k is None:
        tn_diagram(args.n)
        sys.stdout.write(tn_text(args.n))
    else:
        sys.stdout.write(serialize(pnk_diagram(args.n, args.k)))
    return 0


def cmd_table(args) -> int:
    ns = _parse_range(args.range)
    for n in ns:
        tn_diagram(n)  # domain check before any work
    rows = classify_range("T", ns, jobs=args.jobs)
    if args.json:
        sys.stdout.write(json.dumps(table_to_dict(rows), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(format_table(rows))
    return 0


def cmd_systole(args) -> int:
    d = delta_n(args.n, args.digits + 5)
    s = systole_candidate(args.n, args.digits + 5)
    print(f"delta_{args.n} = {decimal_string(d, args.digits)}")
    print(f"systole candidate 2*delta_{args.n} = {decimal_string(s, args.digits)}")
    return 0


def cmd_ratio(args) -> int:
    r = antiprism_ratio(args.n, args.digits + 5)
    print(f"(1+sin(pi/{args.n}))/cos(pi/{args.n}) = {decimal_string(r, args.digits)}")
    return 0


def cmd_faces(args) -> int:
    fl = lobell_faces(args.n)
    F, E, V = fl.counts()
    print(f"L_{args.n}: F={F} E={E} V={V} Euler characteristic {fl.euler_characteristic()}")
    for f in fl.faces:
        nb = " ".join(str(fl.faces[g]) for g in fl.neighbours(f.index))
        print(f"face {f.index} {f}: {nb}")
    return 0


def cmd_trace(args) -> int:
    facts = trace_field_facts(args.n, args.other)
    print(f"degree of Q(cos 2pi/{args.n}): {facts.field_degree}")
    if facts.note:
        print(facts.note)
    return 0


def cmd_cover_search(args) -> int:
    fl = lobell_faces(args.n)
    c = find_coloring(fl, args.top_eq_bottom)
    if c is None:
        print("none found (exhaustive)")
    else:
        sys.stdout.write(format_coloring(c))
    return 0


def cmd_cover_verify(args) -> int:
    fl = lobell_faces(args.n)
    rep = verify_coloring(fl, parse_coloring(_read(args.file)), args.digits + 5)
    yes = lambda b: "yes" if b else "no"
    print(f"valid: {yes(rep.valid)}")
    print(f"orientable: {yes(rep.orientable)}")
    print(f"top equals bottom: {yes(rep.top_equals_bottom)}")
    if rep.geodesic_candidate_length is not None:
        print(f"closed geodesic candidate length 2*delta_{args.n} = {decimal_string(rep.geodesic_candidate_length, args.digits)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lobell", description="Arithmeticity of hyperbolic reflection groups and the Lobell family.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a diagram file (or the slice T_n with --n)")
    c.add_argument("file", nargs="?", help="diagram file, or - for standard input")
    c.add_argument("--n", type=int, help="classify the slice T_n instead of a file")
    c.add_argument("--json", action="store_true", help="emit the JSON report")
    c.add_argument("--digits", type=int, default=30, help="digits in decimal previews (default 30)")
    c.add_argument("--dim", type=int, help="required hyperbolic dimension")
    c.set_defaults(func=cmd_classify)

    g = sub.add_parser("gram", help="exact Gram matrix of T_n (or P_{n,k} with --k)")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int)
    g.set_defaults(func=cmd_gram)

    d = sub.add_parser("diagram", help="print the canonical diagram file of T_n or P_{n,k}")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--k", type=int)
    d.set_defaults(func=cmd_diagram)

    t = sub.add_parser("table", help="classify T_n over a range such as 5..18")
    t.add_argument("range")
    t.add_argument("--json", action="store_true")
    t.add_argument("--jobs", type=int, default=1, help="worker processes")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("systole", help="delta_n and the systole candidate 2*delta_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--digits", type=int, default=30)
    s.set_defaults(func=cmd_systole)

    r = sub.add_parser("ratio", help="antiprism circle ratio (1+sin(pi/n))/cos(pi/n)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--digits", type=int, default=30)
    r.set_defaults(func=cmd_ratio)

    f = sub.add_parser("faces", help="face lattice of L_n")
    f.add_argument("--n", type=int, required=True)
    f.set_defaults(func=cmd_faces)

    tr = sub.add_parser("trace", help="degree of the trace field Q(cos 2pi/n)")
    tr.add_argument("--n", type=int, required=True)
    tr.add_argument("--other", type=int, help="compare with a second n")
    tr.set_defaults(func=cmd_trace)

    cov = sub.add_parser("cover", help="colorings of L_n defining degree-8 covers")
    csub = cov.add_subparsers(dest="cover_command", required=True)
    cs = csub.add_parser("search", help="search for a valid orientable coloring")
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--top-eq-bottom", action="store_true", help="require equal colors on top and bottom")
    cs.set_defaults(func=cmd_cover_search)
    cv = csub.add_parser("verify", help="check a coloring file")
    cv.add_argument("--n", type=int, required=True)
    cv.add_argument("file")
    cv.add_argument("--digits", type=int, default=20)
    cv.set_defaults(func=cmd_cover_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LobellError as e:
        print(f"lobell: error: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as e:
        print(f"lobell: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
