"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 invalid input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import __version__
from .classifier import Classification, classify
from .congruence import coset_gamma_set, parse_congruence
from .edge_spaces import build_C, build_P
from .finite_ring import Ring
from .gamma_set import dessin_dot, orbit_partition, signature
from .spec_text import SpecSyntaxError, SpecValueError, parse_input, parse_ring_spec

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_FAIL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _frac(x):
    return {"num": x.numerator, "den": x.denominator}


def report_dict(res: Classification) -> dict:
    orbits = []
    for r in res.orbits:
        orbits.append({
            "orbit": r.orbit,
            "size": r.size,
            "representative": r.representative,
            "chi": _frac(r.chi),
            "genus_zero": r.genus_zero,
            "regions": [{"size": s, "weight_exponent": e} for s, e in r.regions],
            "monovalent": r.monovalent,
            "depth": r.depth,
            "type_spec": None if r.type_spec is None else {"d": r.type_spec.d, "entries": r.type_spec.as_list()},
            "lifted": [{"degree": x["degree"], "count": x["count"], "signature": x["signature"].as_dict()}
                       for x in r.lifted],
            "fingerprint": None if r.fingerprint is None else r.fingerprint.digest,
            "table_match": r.table_match,
            "table_param": r.table_param,
        })
    return {
        "input": res.input,
        "kind": res.kind,
        "p": res.p,
        "stats": res.stats,
        "edges": res.edges,
        "orbits": orbits,
        "tool_version": __version__,
    }


def report_text(res: Classification) -> str:
    lines = [f"{res.kind} {res.input}: p = {res.p}, {res.edges} edges, {len(res.orbits)} orbit(s)",
             "  " + ", ".join(f"{k} {v}" for k, v in res.stats.items())]
    for r in res.orbits:
        regions = " ".join(f"{s}" + (f"/{res.p}^{e}" if e else "") for s, e in r.regions)
        lines.append(f"orbit {r.orbit}: size {r.size}, chi {r.chi}, genus_zero {r.genus_zero}, "
                     f"depth {r.depth}, representative {r.representative}")
        lines.append(f"  regions {regions}")
        m = r.monovalent
        lines.append(f"  monovalent black {m['black']} (complete {m['complete_black']}), "
                     f"white {m['white']} (complete {m['complete_white']})")
        for x in r.lifted:
            lines.append(f"  lift degree {x['degree']} x{x['count']}: {x['signature']}")
        if r.type_spec is not None:
            ks = " ".join(f"{k[0]}:{k[2]}:{k[3]}" for k in r.type_spec.entries)
            lines.append(f"  type spec (d = {r.type_spec.d}) {ks}")
        if r.fingerprint is not None:
            lines.append(f"  fingerprint {r.fingerprint.digest}")
        if r.table_match:
            tail = f" ({r.table_param})" if r.table_param else ""
            lines.append(f"  match {r.table_match}{tail}")
    return "\n".join(lines)


def _input(args):
    if args.ring is not None:
        return Ring(parse_ring_spec(args.ring))
    return parse_input("wheel", args.wheel)


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    d = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(out))
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, out)


def cmd_classify(args):
    res = classify(_input(args), match=not args.no_match)
    if args.format == "json":
        _emit(json.dumps(report_dict(res), indent=2) + "\n", args.out)
    else:
        _emit(report_text(res) + "\n", args.out)
    return EXIT_OK


def _verdicts_out(verdicts, fmt):
    if fmt == "json":
        doc = [{"kind": v.kind, "name": v.name, "ok": v.ok, "diffs": v.diffs} for v in verdicts]
        _emit(json.dumps(doc, indent=2) + "\n")
    else:
        _emit("\n".join(v.line() for v in verdicts) + "\n")
    failed = [v for v in verdicts if not v.ok]
    print(f"{len(verdicts) - len(failed)}/{len(verdicts)} passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify(args):
    from .tables import verify_table
    try:
        verdicts = verify_table(args.row)
    except KeyError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    return _verdicts_out(verdicts, args.format)


def cmd_sweep(args):
    from .tables import negative_sweep
    return _verdicts_out(negative_sweep(), args.format)


def cmd_coset(args):
    spec = parse_congruence(args.group, args.level, args.intersect or ())
    G = coset_gamma_set(spec)
    sig = signature(G)
    if args.format == "json":
        _emit(json.dumps({"group": str(spec), **sig.as_dict()}, indent=2) + "\n")
    else:
        _emit(f"{spec}: {sig}\n")
    return EXIT_OK


def cmd_dessin(args):
    obj = _input(args)
    if isinstance(obj, Ring) and not args.lifted:
        space = build_P(obj)
        orbits = space.orbits
    elif isinstance(obj, Ring):
        space = build_P(obj)
        if space.cover is None:
            print("ring too large for an explicit lift", file=sys.stderr)
            return EXIT_INVALID
        base = space.orbits
        if not 0 <= args.orbit < len(base):
            print(f"unknown orbit {args.orbit}: there are {len(base)}", file=sys.stderr)
            return EXIT_INVALID
        lift = space.lift_orbits(base[args.orbit]).orbits[0]
        _emit(dessin_dot(space.cover[0].gamma, lift), args.out)
        return EXIT_OK
    else:
        space = build_C(obj)
        orbits = orbit_partition(space.gamma)
    if not 0 <= args.orbit < len(orbits):
        print(f"unknown orbit {args.orbit}: there are {len(orbits)}", file=sys.stderr)
        return EXIT_INVALID
    _emit(dessin_dot(space.gamma, orbits[args.orbit]), args.out)
    return EXIT_OK


def _add_input(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ring", metavar="SPEC", help='ring, e.g. "Z(9)[l]/(3*l, l^2)"')
    g.add_argument("--wheel", metavar="P DIVS MATRIX",
                   help='e.g. --wheel 3 2,1 "-1,-3;0,-1": Z/p^k1 + Z/p^k2 + ... with t-matrix rows')


def build_parser():
    ap = _Parser(prog="burau-orbits", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="orbit reports for a ring or module")
    _add_input(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.add_argument("--no-match", action="store_true", help="skip table matching")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-table", help="check the shipped expectation data")
    p.add_argument("--row", help="only this subgroup (or family) name")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="inputs expected to have no genus-zero orbit")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("coset", help="signature of a congruence subgroup")
    p.add_argument("--group", required=True, choices=("Gamma0", "Gamma1", "Gamma"))
    p.add_argument("--level", required=True, type=int)
    p.add_argument("--intersect", action="append", metavar="GROUP:LEVEL")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_coset)

    p = sub.add_parser("dessin", help="DOT export of one orbit")
    _add_input(p)
    p.add_argument("--orbit", type=int, required=True)
    p.add_argument("--lifted", action="store_true", help="for rings: one lift of the orbit to C(R)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dessin)
    return ap


def _join_wheel(argv):
    # `--wheel P DIVS MATRIX` as one token, so a matrix like "-1,0;0,-1" is not taken for an option
    argv = list(argv)
    for i, a in enumerate(argv):
        if a == "--wheel" and i + 3 < len(argv) and " " not in argv[i + 1]:
            return argv[:i] + ["--wheel=" + " ".join(argv[i + 1:i + 4])] + argv[i + 4:]
    return argv


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_join_wheel(argv))
    try:
        return args.func(args)
    except SpecSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (SpecValueError, ValueError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
