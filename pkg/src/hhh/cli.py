"""Command-line interface: compute HHH, run verification checks, query the oracles.

Exit codes: 0 success, 1 computation error (or uncertified result without
--allow-partial), 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .braid import BraidError, BraidWord, torus_braid
from .pipeline import SCHEMA_VERSION, PipelineError, compute_hhh, verify_euler, verify_markov, verify_symmetry

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


def _add_braid_args(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("-n", "--strands", type=int, required=required, help="number of strands")
    p.add_argument("-w", "--word", default="", help='braid word, e.g. "1 -2 1 -2"')


def _add_compute_args(p: argparse.ArgumentParser):
    p.add_argument("--window", type=int, default=None, help="upper q cutoff of the certified range")
    p.add_argument("--reduce", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--minimize", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hhh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="triply graded homology of a braid closure")
    _add_braid_args(comp)
    _add_compute_args(comp)
    comp.add_argument("--json", dest="json_out", default=None, help="write the JSON document to this file")
    comp.add_argument("--allow-partial", action="store_true", help="exit 0 even if the tail is uncertified")

    ver = sub.add_parser("verify", help="run a verification check")
    ver.add_argument("check", choices=["moy", "markov", "symmetry", "torus", "euler"])
    _add_braid_args(ver, required=False)
    _add_compute_args(ver)
    ver.add_argument("--n", dest="torus_n", type=int, default=None, help="torus parameter n (also strands for moy)")
    ver.add_argument("--k", dest="torus_k", type=int, default=None, help="torus parameter k")
    ver.add_argument("--cutoff", type=int, default=20)

    orc = sub.add_parser("oracle", help="evaluate an oracle")
    orc.add_argument("which", choices=["hilb", "homfly"])
    _add_braid_args(orc, required=False)
    orc.add_argument("--n", dest="torus_n", type=int, default=None)
    orc.add_argument("--k", dest="torus_k", type=int, default=None)
    orc.add_argument("--cutoff", type=int, default=20)
    return parser


def _braid(args) -> BraidWord:
    if args.strands is None:
        raise BraidError("-n/--strands is required")
    return BraidWord.parse(args.strands, args.word)


def _emit(doc: dict, path: str | None = None):
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_compute(args) -> int:
    w = _braid(args)
    res = compute_hhh(w, window=args.window, reduce=args.reduce, minimize=args.minimize, threads=args.threads)
    _emit(res.to_json(), args.json_out)
    if not res.certified and not args.allow_partial:
        print("uncertified tail: " + "; ".join(res.notes), file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _report(name: str, ok: bool, violation=None) -> int:
    if ok:
        print(f"PASS {name}")
        return EXIT_OK
    print(f"FAIL {name}: first violation {violation}")
    return EXIT_FAIL


def cmd_verify(args) -> int:
    from . import hochschild

    opts = dict(window=args.window, minimize=args.minimize, threads=args.threads)
    if args.check == "moy":
        n = args.torus_n or args.strands or 3
        status = EXIT_OK
        d2 = hochschild.moy2_discrepancies()
        status = max(status, _report("MOY2 (n=2)", not d2, d2[:1]))
        if n >= 3:
            d1 = hochschild.moy1_discrepancies()
            status = max(status, _report("MOY1 (n=3)", not d1, d1[:1]))
        return status
    if args.check == "torus":
        if args.torus_n is None or args.torus_k is None:
            raise ValueError("verify torus needs --n and --k")
        return _verify_torus(args.torus_n, args.torus_k, args.cutoff, opts)
    w = _braid(args)
    if args.check == "markov":
        rep = verify_markov(w, **opts)
        return _report(f"markov {w.text()!r}", rep.ok, rep.first_violation())
    res = compute_hhh(w, **opts)
    if args.check == "symmetry":
        rep = verify_symmetry(res)
        return _report(f"symmetry {w.text()!r}", rep.ok, rep.first_violation())
    rep = verify_euler(res)
    return _report(f"euler {w.text()!r}", rep.ok, rep.first_violation())


def _verify_torus(n: int, k: int, cutoff: int, opts: dict) -> int:
    from .hilb import torus_prediction

    w = torus_braid(n, n * k + 1)
    window = max(cutoff, opts.pop("window") or 0)
    res = compute_hhh(w, window=window, **opts)
    engine = (res.unreduced - res.unreduced.shift(q=2)).truncate(cutoff)
    pred = torus_prediction(n, k, cutoff)
    diff = engine.discrepancies(pred, cutoff)
    return _report(f"torus T({n},{n * k + 1})", not diff, diff[:1])


def cmd_oracle(args) -> int:
    if args.which == "hilb":
        from .hilb import calibration_shift, torus_prediction

        if args.torus_n is None or args.torus_k is None:
            raise ValueError("oracle hilb needs --n and --k")
        series = torus_prediction(args.torus_n, args.torus_k, args.cutoff)
        _emit({
            "schema": SCHEMA_VERSION,
            "oracle": "hilb",
            "n": args.torus_n,
            "k": args.torus_k,
            "cutoff": args.cutoff,
            "dictionary": {"q1": "q^2", "q2": "t^2 q^-2", "a": "a^-1 q^2"},
            "shift": list(calibration_shift(args.torus_n, args.torus_k)),
            "series": series.to_rows(),
        })
        return EXIT_OK
    import sympy as sp

    from .hecke import homfly, laurent_terms

    w = _braid(args)
    P = homfly(w)
    try:
        terms = sorted([ea, ev, c] for (ea, ev), c in laurent_terms(P).items())
    except ValueError:
        terms = None
    _emit({"schema": SCHEMA_VERSION, "oracle": "homfly", "braid": list(w.letters), "strands": w.strands,
           "polynomial": str(sp.factor(P) if terms is None else P), "terms": terms})
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"compute": cmd_compute, "verify": cmd_verify, "oracle": cmd_oracle}
    try:
        return handlers[args.command](args)
    except (BraidError, PipelineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
