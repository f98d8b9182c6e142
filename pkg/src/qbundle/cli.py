"""qbundle command line: normal forms, bases, cotensor products, traces and verification suites.

Reports are JSON on stdout (or ``--out``); a one-line summary goes to stderr.
Exit codes: 0 pass, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _bidegree(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("bidegree must look like 3,3")
    return a, b


def _unit_interval(text):
    q = float(text)
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError("q must lie in (0, 1)")
    return q


def _common(p):
    p.add_argument("--algebra", default=None, help="presentation id (s2, su2, zp:p=3, a2n:n=1, ...)")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--bidegree", type=_bidegree, default=None)
    p.add_argument("--q", type=_unit_interval, default=0.5)
    p.add_argument("--phi", type=float, default=0.3)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--margin", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")


def build_parser():
    ap = argparse.ArgumentParser(prog="qbundle", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qbundle {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("normalize", help="print the normal form of an expression")
    p.add_argument("expr")
    _common(p)

    p = sub.add_parser("basis", help="list normal words up to --degree")
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["hopf", "comodule", "connections", "cleft", "prolong", "smash",
                                      "phi", "mu", "reps", "fredholm", "all"])
    _common(p)

    p = sub.add_parser("cotensor", help="basis of S^m □_Z2 H within a bidegree")
    p.add_argument("--sphere", type=int, default=2)
    p.add_argument("--structure", choices=["u1", "su2"], default="u1")
    _common(p)

    p = sub.add_parser("trace", help="Chern-character trace τ of an A^{2n} element")
    p.add_argument("--monomial", required=True)
    p.add_argument("--n", type=int, default=1)
    _common(p)

    p = sub.add_parser("fredholm-verify", help="structure, oracle, selection rule and phases")
    p.add_argument("--n", type=int, choices=[1, 2], default=None)
    _common(p)
    return ap


def _load(spec):
    from .ncalg import load_presentation
    if spec is None:
        raise ValueError("--algebra is required")
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        params[k] = int(v)
    return load_presentation(name, **params)


def _emit(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _report(cmd, cfg, records):
    ok = all(r["status"] == "pass" for r in records)
    return {"tool": "qbundle", "version": __version__, "command": cmd, "config": cfg.as_dict(),
            "records": records, "status": "pass" if ok else "fail"}


def cmd_normalize(args):
    from .ncalg import parse_element
    P = _load(args.algebra)
    print(parse_element(args.expr, P))
    return EXIT_OK


def cmd_basis(args):
    P = _load(args.algebra)
    d = 4 if args.degree is None else args.degree
    words = [P.format_word(w) for w in P.basis(d)]
    _emit({"algebra": P.name, "degree": d, "count": len(words), "basis": words}, args.out)
    return EXIT_OK


def cmd_verify(args, cfg):
    from .suites import run_suite
    records = run_suite(args.suite, cfg)
    rep = _report(f"verify {args.suite}", cfg, records)
    _emit(rep, args.out)
    failed = [r["id"] for r in records if r["status"] != "pass"]
    print(f"{args.suite}: {len(records) - len(failed)}/{len(records)} checks pass"
          + (f"; failing: {', '.join(failed)}" if failed else ""), file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_cotensor(args):
    from .comod import Cotensor, sphere_z2_coaction
    from .hopf import bundled_hopf_maps
    maps = bundled_hopf_maps()
    pi = maps["pi2"] if args.structure == "u1" else maps["pi"]
    C = Cotensor(sphere_z2_coaction(args.sphere), pi)
    bid = args.bidegree or (2, 2)
    basis = C.basis(*bid)
    _emit({"sphere": args.sphere, "structure": args.structure, "bidegree": list(bid),
           "count": len(basis), "basis": [str(x) for x in basis]}, args.out)
    return EXIT_OK


def cmd_trace(args):
    from .fredholm import build_fredholm, chern_trace, closed_form_oracle, selection_rule_check
    from .ncalg import load_presentation, parse_element
    P = load_presentation("a2n", n=args.n)
    x = parse_element(args.monomial, P)
    M = build_fredholm(args.n, args.phi, args.q, args.cutoff or 60)
    out = chern_trace(x, M).as_dict()
    out["monomial"] = str(x)
    if len(x.terms) == 1:
        (w, _), = x.terms.items()
        out["predicted_zero"] = selection_rule_check(w, P)
    oracle = closed_form_oracle(x, args.n, args.q, args.phi)
    if oracle is not None:
        out["oracle_re"], out["oracle_im"] = oracle.real, oracle.imag
    _emit(out, args.out)
    return EXIT_OK


def cmd_fredholm_verify(args, cfg):
    from .fredholm import fredholm_report
    records = []
    for n in ([args.n] if args.n else [1, 2]):
        records += fredholm_report(n, args.phi, args.q, args.cutoff or 60, seed=args.seed)["records"]
    records.sort(key=lambda r: r["id"])
    _emit(_report("fredholm-verify", cfg, records), args.out)
    failed = [r["id"] for r in records if r["status"] != "pass"]
    print(f"fredholm: {len(records) - len(failed)}/{len(records)} checks pass", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


def main(argv=None) -> int:
    from .ncalg import ParseError, PresentationFileError
    from .suites import RunConfig
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = RunConfig(args.degree, args.bidegree, args.q, args.phi, args.cutoff, args.margin, args.seed)
        if args.cmd == "normalize":
            return cmd_normalize(args)
        if args.cmd == "basis":
            return cmd_basis(args)
        if args.cmd == "verify":
            return cmd_verify(args, cfg)
        if args.cmd == "cotensor":
            return cmd_cotensor(args)
        if args.cmd == "trace":
            return cmd_trace(args)
        return cmd_fredholm_verify(args, cfg)
    except (ParseError, PresentationFileError, ValueError, KeyError) as e:
        print(f"qbundle: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
