"""``muchnik`` command line tool.

Exit codes: 0 success (``analyze``: realizable), 1 negative result
(``analyze``: not realizable; ``model``: a check failed), 2 bad input.
JSON goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import catalog
from .errors import MuchnikError, NotInitialSegment
from .formats import AnalysisReport, dumps, poset_to_json, read_poset, to_dot
from .lattice import verify_lattice
from .muchnik_model import dyment_sweep, verify_f_iso
from .realizability import UslCompletion, equivalence_sweep, realizability_profile

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _labels(poset, elements):
    return [poset.label(int(e)) for e in elements]


def _witness(lattice, profile):
    w = profile["verdict"].witness
    rep = profile["rep"]
    j = rep.j_poset
    if isinstance(w, UslCompletion):
        c = w.completion
        return {"kind": "usl_completion", "labels": _labels(c, range(c.n)),
                "covers": [list(p) for p in c.cover_pairs]}
    bowtie = [lattice.label(rep.j_elements[k]) for k in w.bowtie.as_tuple()]
    a, b = w.interval_bounds
    return {
        "kind": "dd_like_interval",
        "bowtie": dict(zip(("x0", "x1", "y0", "y1"), bowtie)),
        "lower_set": [lattice.label(rep.j_elements[k]) for k in w.x_set],
        "upper_set": [lattice.label(rep.j_elements[k]) for k in w.y_set],
        "interval": [lattice.label(a), lattice.label(b)],
        "j_covers": [list(p) for p in j.cover_pairs],
    }


def analyze(poset, digest, timed=False):
    start = time.perf_counter()
    lattice = verify_lattice(poset)
    profile = realizability_profile(lattice)
    rep = profile["rep"]
    sub = profile["dd_subinterval"]
    report = AnalysisReport(
        input_digest=digest,
        size=lattice.n,
        distributive=lattice.distributive,
        join_irreducibles=_labels(lattice, rep.j_elements),
        birkhoff_covers=[list(p) for p in rep.j_poset.cover_pairs],
        dd_like=bool(profile["dd_like"]),
        has_dd_like_subinterval=None if sub is None else _labels(lattice, sub),
        realizable=profile["verdict"].realizable,
        initial_segment_realizable=bool(profile["initial_segment"]),
        witness=_witness(lattice, profile),
    )
    if timed:
        report.timing_seconds = round(time.perf_counter() - start, 6)
    return report


def cmd_analyze(args, out):
    poset, digest = read_poset(args.input)
    if args.dot:
        verify_lattice(poset)
        out.write(to_dot(poset))
        report = analyze(poset, digest)
    else:
        report = analyze(poset, digest, timed=args.timing)
        out.write(report.to_json())
    return EXIT_OK if report.realizable else EXIT_NEGATIVE


def cmd_enumerate(args, out):
    out.write(dumps(equivalence_sweep(args.max_j, workers=args.workers)))
    return EXIT_OK


def cmd_model(args, out):
    if args.dyment:
        report = dyment_sweep(args.max_size, workers=args.workers)
        out.write(dumps(report))
        return EXIT_OK if not report["violations"] else EXIT_NEGATIVE
    if args.poset is None:
        raise argparse.ArgumentTypeError("model needs --poset (or --dyment)")
    poset, _ = read_poset(args.poset)
    report = verify_f_iso(poset, with_bottom=args.with_bottom)
    out.write(dumps(report))
    return EXIT_OK if report["passed"] else EXIT_NEGATIVE


def cmd_catalog(args, out):
    if args.name is None:
        out.write(dumps([{"name": n, "kind": catalog.get(n).kind, "description": catalog.get(n).description}
                         for n in catalog.names()]))
        return EXIT_OK
    fx = catalog.get(args.name)
    out.write(dumps({"name": fx.name, "kind": fx.kind, "description": fx.description, **poset_to_json(fx.poset())}))
    return EXIT_OK


def cmd_export(args, out):
    poset, _ = read_poset(args.input)
    out.write(to_dot(poset))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="muchnik", description="Finite distributive lattices as Muchnik intervals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="realizability analysis of a lattice file")
    p.add_argument("--input", required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--dot", action="store_true", help="Hasse diagram instead of the report")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="bowtie test vs interval scan over all posets")
    p.add_argument("--max-j", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("model", help="finite Muchnik models")
    p.add_argument("--poset")
    p.add_argument("--with-bottom", action="store_true")
    p.add_argument("--verify-f", action="store_true", help="check the F-construction (default action)")
    p.add_argument("--dyment", action="store_true")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("catalog", help="named fixtures")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--name")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("export", help="Hasse diagram as DOT")
    p.add_argument("--input", required=True)
    p.add_argument("--dot", action="store_true", default=True)
    p.set_defaults(func=cmd_export)
    return parser


def _error(exc, err):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    line = getattr(exc, "line", None)
    if line is not None:
        payload["line"] = line
    if isinstance(exc, NotInitialSegment):
        names = exc.labels or [str(k) for k in range(max(exc.witness.as_tuple()) + 1)]
        payload["witness"] = {k: names[v] for k, v in zip(("x0", "x1", "y0", "y1"), exc.witness.as_tuple())}
    err.write(dumps(payload))


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (MuchnikError, OSError, KeyError, argparse.ArgumentTypeError, ValueError) as exc:
        _error(exc, err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
