"""``lparity`` command line: analyze, verify, search, gen, fixtures."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import claims as C
from . import fixtures as F
from . import search as S
from . import spectrum as SP
from .core import LatinError, LatinSquare, OrderGuardError, format_square, parse_square

EXIT_OK = 0
EXIT_THEOREM_FAILURE = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3

_ANALYZE_FLAGS = {
    "spectrum": "spectrum",
    "signed": "signed",
    "types": "types",
    "depleted": "depleted",
    "ev": "ev",
    "r_seq": "r_seq",
}


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("LPARITY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SystemExit(f"LPARITY_THREADS must be an integer, got {env!r}") from None
    return 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


# --------------------------------------------------------------------------
# analyze


def _print_report(rep: dict, out) -> None:
    shape = "x".join(map(str, rep["shape"]))
    print(f"structure: {rep['structure']} ({shape}, {rep['n_symbols']} symbols)", file=out)
    n = rep["order"]
    label = f"E_{n}" if n is not None else "transversals"
    print(f"{label} = {rep['transversals']}", file=out)
    if rep["signed"] is not None:
        print(f"E+- = {rep['signed']}", file=out)
    if rep["types"] is not None:
        t = rep["types"]
        print(f"types: w={t['w']} x={t['x']} y={t['y']} z={t['z']}", file=out)
    if rep["E"] is not None:
        print("E: " + " ".join(f"E_{m}={v}" for m, v in enumerate(rep["E"], 1)), file=out)
    if rep["E_ev"] is not None:
        print("E_ev: " + " ".join(f"E_{m}={v}" for m, v in enumerate(rep["E_ev"], 1)), file=out)
    if rep["R"] is not None:
        print("R: " + " ".join(f"R_{r}={v}" for r, v in enumerate(rep["R"], 1)), file=out)
    if rep["t"] is not None:
        if rep["t"]:
            print(f"t_11 = {rep['t'][0][0]}", file=out)
        print("t (row i, column j):", file=out)
        for row in rep["t"]:
            print("  " + " ".join(str(v) for v in row), file=out)
    if rep["N"] is not None:
        print("N: " + " ".join(f"N_{r}={v}" for r, v in enumerate(rep["N"], 1)), file=out)
    for key, why in sorted(rep["skipped"].items()):
        print(f"{key}: {why}", file=out)


def cmd_analyze(args, out) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        L = parse_square(text)
    except LatinError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fields = [f for attr, f in _ANALYZE_FLAGS.items() if getattr(args, attr)]
    rep = SP.spectrum_report(L, fields)
    if args.json:
        print(json.dumps(rep, sort_keys=True), file=out)
    else:
        _print_report(rep, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def _corpus(args) -> S.Corpus:
    if args.exhaustive is not None:
        return S.Corpus.exhaustive(args.exhaustive)
    if args.random is not None:
        n, count, seed = args.random
        return S.Corpus.random(n, count, seed)
    return S.Corpus.fixtures()


def _claim_spec(args):
    if args.claims:
        return args.claims
    if args.conjectures:
        return "conjectures"
    return "all-theorems"


def _write_counterexamples(failures, directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for f in failures:
        p = directory / f"{f['claim']}-{f['subject']}.lsq"
        p.write_text(f["square"])
        paths.append(p)
    return paths


def cmd_verify(args, out) -> int:
    try:
        keys = C.resolve_claims(_claim_spec(args))
    except C.UnknownClaimError as exc:
        print(f"error: unknown claim key(s): {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    try:
        corpus = _corpus(args)
    except OrderGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report_fh = None
    if args.report == "-":
        report_fh = out
    elif args.report:
        report_fh = open(args.report, "w")
    sink = (lambda r: print(r.dumps(), file=report_fh)) if report_fh else None
    try:
        suite = C.run_suite(corpus, keys, threads=_threads(args.threads), sink=sink)
    finally:
        if report_fh is not None and report_fh is not out:
            report_fh.close()
    print(f"corpus: {corpus.describe()}", file=out)
    print(suite.table(), file=out)
    if suite.counterexamples:
        paths = _write_counterexamples(suite.counterexamples, Path(args.counterexample_dir))
        print("=" * 60, file=out)
        print(f"CONJECTURE COUNTEREXAMPLE: {len(paths)} found", file=out)
        for p in paths:
            print(f"  saved {p}", file=out)
        print("=" * 60, file=out)
    for f in suite.theorem_failures:
        print(f"THEOREM FAILURE {f['claim']} on {f['subject']}:\n{f['square']}", file=out)
    return EXIT_OK if suite.ok else EXIT_THEOREM_FAILURE


# --------------------------------------------------------------------------
# search, gen, fixtures


def cmd_search(args, out) -> int:
    if args.input:
        try:
            start = parse_square(Path(args.input).read_text(), kind="square")
        except (OSError, LatinError) as exc:
            print(f"{args.input}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        start = F.fixture(f"order{args.order_fixture}")
    if not 0 <= args.target < args.mod:
        print("error: need 0 <= target < mod", file=sys.stderr)
        return EXIT_USAGE
    result = S.residue_search(start, args.target, args.mod, args.budget, args.seed,
                              stagnation=args.stagnation)
    print(result.dumps(), file=out)
    if result.success or result.excluded:
        return EXIT_OK
    return EXIT_EXHAUSTED


def cmd_gen(args, out) -> int:
    for i in range(args.count):
        seed = args.seed if args.count == 1 else S._seed32(args.seed, args.order, i)
        L = S.random_square(args.order, seed, burn_in=args.burn_in)
        print(format_square(L), end="", file=out)
    return EXIT_OK


def cmd_fixtures(args, out) -> int:
    if args.emit:
        for p in F.emit_fixtures(args.emit):
            print(p, file=out)
        return EXIT_OK
    for name in F.NAMES:
        sq = F.fixture(name)
        kind = "latin" if isinstance(sq, LatinSquare) else "row-latin"
        print(f"{name:<10} order {sq.rows:<3} {kind}", file=out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lparity", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="transversal statistics of one square")
    p.add_argument("file")
    p.add_argument("--spectrum", action="store_true", help="diagonal weight counts E_m")
    p.add_argument("--signed", action="store_true", help="signed transversal count")
    p.add_argument("--types", action="store_true", help="parity type counts w, x, y, z")
    p.add_argument("--depleted", action="store_true", help="t_ij and N_r")
    p.add_argument("--ev", action="store_true", help="even-diagonal weight counts")
    p.add_argument("--r-seq", dest="r_seq", action="store_true", help="subset sums R_r")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check registered claims over a corpus")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--exhaustive", type=_nonneg, metavar="N")
    src.add_argument("--random", type=_nonneg, nargs=3, metavar=("N", "COUNT", "SEED"))
    src.add_argument("--fixtures", action="store_true")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--claims", metavar="KEYS", help="comma-separated claim keys")
    which.add_argument("--all-theorems", action="store_true")
    which.add_argument("--conjectures", action="store_true")
    p.add_argument("--threads", type=_positive)
    p.add_argument("--report", metavar="PATH", help="JSON-lines output ('-' for stdout)")
    p.add_argument("--counterexample-dir", default="counterexamples")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="turn intercalates until E_n = k mod m")
    start = p.add_mutually_exclusive_group(required=True)
    start.add_argument("--order-fixture", type=int, choices=(9, 10, 11))
    start.add_argument("--input", metavar="FILE")
    p.add_argument("--target", type=_nonneg, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--budget", type=_positive, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stagnation", type=_positive, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", help="random Latin squares")
    p.add_argument("--order", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=_positive, default=1)
    p.add_argument("--burn-in", type=_nonneg, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fixtures", help="list or write the bundled squares")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="DIR")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "mod", None) is not None and args.mod < 2:
        print("error: --mod must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args, out)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
