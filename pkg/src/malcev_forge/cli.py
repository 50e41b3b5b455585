"""Command line front end.

    malcev-forge verify --c 3 --n 3 --e 1,2 --trials 1000 --seed 42 --out g3.json
    malcev-forge witness --c 3 --n 4 --e 2
    malcev-forge identities --c-max 6
    malcev-forge report --c 3 --n 3 --n-max 5 --e 1,2

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .ideal import check_shift_consistency
from .poly import verify_f_factorizations
from .verify import DEFAULT_BOUND, T_membership_and_closure_check, build_Gn

log = logging.getLogger("malcev_forge")


class UsageError(Exception):
    pass


def _int_list(text: str):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _add_common(p: argparse.ArgumentParser, *, need_n: bool = True):
    p.add_argument("--c", type=int, default=3, help="Malcev degree satisfied on T (>= 3)")
    if need_n:
        p.add_argument("--n", type=int, required=True, help="number of generators t_i (>= c)")
    p.add_argument("--e", type=_int_list, default=[1], help="coset exponents, e.g. 1,2,3")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="random vector entries lie in [-bound, bound]")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="malcev-forge", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("verify", help="build G_n and write its certificate"))
    _add_common(sub.add_parser("witness", help="write M_n failure substitutions"))

    ident = sub.add_parser("identities", help="check the f_c factorizations and the shift isomorphism")
    ident.add_argument("--c-max", type=int, default=8)
    ident.add_argument("--n", type=int, default=3, help="largest variable count for the shift checks")
    ident.add_argument("--out", default=None)

    rep = sub.add_parser("report", help="summarise certificates for n = --n .. --n-max")
    _add_common(rep)
    rep.add_argument("--n-max", type=int, default=None)
    return parser


def _validate(args):
    if args.command in ("verify", "witness", "report"):
        if args.c < 3:
            raise UsageError(f"--c must be >= 3 (got {args.c})")
        if args.n < args.c:
            raise UsageError(f"--n must be >= --c (got n={args.n}, c={args.c})")
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        if args.bound < 0:
            raise UsageError("--bound must be >= 0")
        if any(e < 1 for e in args.e):
            raise UsageError("every --e value must be >= 1")
        if args.command == "report":
            if args.n_max is None:
                args.n_max = args.n
            if args.n_max < args.n:
                raise UsageError("--n-max must be >= --n")
    elif args.command == "identities":
        if args.c_max < 1:
            raise UsageError("--c-max must be >= 1")
        if args.n < 1:
            raise UsageError("--n must be >= 1")


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads() -> int:
    raw = os.environ.get("MALCEV_FORGE_THREADS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def cmd_verify(args) -> int:
    cert = build_Gn(args.c, args.n, args.e, trials=args.trials, seed=args.seed, bound=args.bound)
    _emit(cert.to_json(), args.out)
    if not cert.valid:
        log.error("check failed: %s", cert.failed_stage)
    return 0 if cert.valid else 1


def cmd_witness(args) -> int:
    cert = build_Gn(args.c, args.n, args.e, trials=args.trials, seed=args.seed, bound=args.bound)
    transcript = {
        "c": args.c,
        "n": args.n,
        "d": cert.d,
        "law": f"M_{args.n}",
        "witnesses": [cert.witnesses[e].as_dict(args.n, args.c) for e in sorted(cert.witnesses)],
        "check": cert.check("witness").as_dict(),
    }
    _emit(json.dumps(transcript, indent=2) + "\n", args.out)
    return 0 if cert.check("witness").passed else 1


def cmd_identities(args) -> int:
    rows = []
    ok = True
    for c in range(1, args.c_max + 1):
        rep = verify_f_factorizations(c)
        shift = {str(n): check_shift_consistency(n, c) for n in range(1, args.n + 1)}
        passed = rep.ok and all(shift.values())
        ok &= passed
        rows.append({
            "c": c,
            "pass": passed,
            "identity_1": rep.identity_1,
            "identity_1bis": rep.identity_1bis,
            "identity_2": rep.identity_2,
            "g_c": str(rep.g),
            "g_c(1)": rep.g_at_1,
            "h_c(1)": rep.h_at_1,
            "shift": shift,
        })
    _emit(json.dumps({"identities": rows}, indent=2) + "\n", args.out)
    return 0 if ok else 1


def cmd_report(args) -> int:
    ns = list(range(args.n, args.n_max + 1))

    def one(n):
        return build_Gn(args.c, n, args.e, trials=args.trials, seed=args.seed, bound=args.bound)

    with ThreadPoolExecutor(max_workers=min(_threads(), len(ns))) as pool:
        certs = list(pool.map(one, ns))
    closure = T_membership_and_closure_check(certs, samples=min(args.trials, 500), seed=args.seed, bound=args.bound)
    summary = {
        "c": args.c,
        "e": args.e,
        "seed": args.seed,
        "certificates": [
            {
                "n": cert.n,
                "d": cert.d,
                "valid": cert.valid,
                "failed_stage": cert.failed_stage,
                "nilpotency_class": cert.nilpotency_class,
                "checks": {chk.name: chk.passed for chk in cert.checks},
            }
            for cert in certs
        ],
        "closure": {
            "samples": closure.samples,
            "membership": closure.membership,
            "normality": closure.normality,
            "commutator_closed": closure.commutator_closed,
            "cross_commuting": closure.cross_commuting,
        },
    }
    _emit(json.dumps(summary, indent=2) + "\n", args.out)
    return 0 if all(c.valid for c in certs) and closure.passed else 1


COMMANDS = {
    "verify": cmd_verify,
    "witness": cmd_witness,
    "identities": cmd_identities,
    "report": cmd_report,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        _validate(args)
    except UsageError as exc:
        print(f"malcev-forge: error: {exc}", file=sys.stderr)
        return 2
    return COMMANDS[args.command](args)


def main(argv=None):
    sys.exit(run(argv))
