"""Command-line front end: ``sl12gen verify|certify|sweep|field``."""

from __future__ import annotations

import argparse
import json
import sys

from . import certify
from .action import GUARD_ENV, point_guard, sl_order
from .ff import FieldError, make_field
from .gens import T_POLICY, GeneratorError, default_t, make_pair

EXIT_PASS, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2, 3

CLAIMS = ("lemma-alt", "lemma-5", "prop-steps", "lemma-alt5", "orders", "corollary")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kw):
        kw.setdefault("formatter_class", argparse.RawDescriptionHelpFormatter)
        super().__init__(*args, **kw)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _field_args(p: argparse.ArgumentParser, *, need_p: bool = True):
    p.add_argument("--p", type=int, required=need_p, help="characteristic")
    p.add_argument("--a", type=int, default=1, help="extension degree (default 1)")
    p.add_argument("--modulus", type=_int_list, default=None,
                   help="monic modulus as c0,c1,...,1 (default: least irreducible)")


def _common_args(p: argparse.ArgumentParser):
    p.add_argument("--t", type=_int_list, default=None,
                   help="t as an integer residue or coefficients c0,c1,... in the power basis")
    p.add_argument("--variant", choices=("standard", "tilde"), default=None)
    p.add_argument("--guard", type=int, default=None,
                   help=f"largest action space in points (default 2^20, env {GUARD_ENV})")
    p.add_argument("--randomized", action="store_true", help="random product-replacement pre-pass")
    p.add_argument("--seed", type=int, default=0, help="seed of the random pre-pass")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--out", default=None, help="write the report to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sl12gen",
        description="Certificates for the (2,3)-generation of SL_12(q).",
        epilog=T_POLICY,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check one step of the argument", epilog=T_POLICY)
    v.add_argument("claim", choices=CLAIMS)
    _field_args(v, need_p=False)
    _common_args(v)
    v.add_argument("--exploratory", action="store_true",
                   help="lemma-5 only: measure the closure even when t violates the hypothesis")

    c = sub.add_parser("certify", help="full generation by Schreier-Sims", epilog=T_POLICY)
    _field_args(c)
    _common_args(c)

    s = sub.add_parser("sweep", help="generator orders and Alt(12) containment over all primes up to a bound", epilog=T_POLICY)
    s.add_argument("--p-max", type=int, required=True)
    s.add_argument("--a", type=_int_list, default=[1], help="comma-separated degrees (default 1)")
    s.add_argument("--ts", type=int, default=1, help="valid t values per cell (default 1)")
    s.add_argument("--guard", type=int, default=None)
    s.add_argument("--randomized", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.add_argument("--out", default=None)

    f = sub.add_parser("field", help="field utilities", epilog=T_POLICY)
    fsub = f.add_subparsers(dest="field_command", required=True, parser_class=_Parser)
    fi = fsub.add_parser("info", help="describe F_{p^a} and its default t")
    _field_args(fi)
    fi.add_argument("--json", action="store_true")
    fi.add_argument("--out", default=None)
    return parser


def _spec(args):
    if args.a < 1:
        raise UsageError("--a must be at least 1")
    return make_field(args.p, args.a, tuple(args.modulus) if args.modulus else None)


def _t(spec, args):
    if args.t is None:
        return None
    if len(args.t) > spec.a:
        raise UsageError(f"--t has {len(args.t)} coefficients, the field has degree {spec.a}")
    return spec(args.t if len(args.t) > 1 else args.t[0])


def _run_verify(args) -> list[certify.CertificateReport]:
    claim = args.claim
    kw = dict(randomized=args.randomized, guard=args.guard, seed=args.seed)
    if claim in ("lemma-alt5", "corollary"):
        if args.p not in (None, 5):
            raise UsageError(f"{claim} is the p = 5 case; drop --p or use --p 5")
        args.p = 5
    if args.p is None:
        raise UsageError("--p is required")
    if args.exploratory and claim != "lemma-5":
        raise UsageError("--exploratory only applies to lemma-5")
    spec = _spec(args)
    t = _t(spec, args)
    if claim == "orders":
        variant = args.variant or ("tilde" if spec.p == 5 else "standard")
        if variant == "tilde" and spec.p != 5:
            raise UsageError("the tilde variant exists only for p = 5")
        return [certify.verify_orders(make_pair(spec, default_t(spec) if t is None else t, variant, check=False))]
    if claim == "lemma-alt":
        if spec.p == 5:
            raise UsageError("lemma-alt needs p != 5; use `verify lemma-alt5`")
        return [certify.verify_lemma_alt(spec, t)]
    if claim == "lemma-5":
        return [certify.verify_lemma_5(spec, t, exploratory=args.exploratory, **kw)]
    if claim == "prop-steps":
        if spec.p == 5:
            raise UsageError("prop-steps needs p != 5; use `verify corollary`")
        return [certify.verify_prop_steps(spec, t, **kw)]
    if claim == "lemma-alt5":
        return [certify.verify_lemma_alt5(spec.a, t, modulus=spec.modulus, **kw)]
    return [certify.verify_corollary(spec.a, t, modulus=spec.modulus, **kw)]


def _run_certify(args):
    spec = _spec(args)
    if args.variant == "tilde" and spec.p != 5:
        raise UsageError("the tilde variant exists only for p = 5")
    return [certify.certify_full_generation(spec, _t(spec, args), args.variant,
                                            randomized=args.randomized, guard=args.guard, seed=args.seed)]


def _field_info(args) -> dict:
    spec = _spec(args)
    info = spec.to_dict()
    info["q"] = str(spec.q)
    info["default_t"] = list(default_t(spec).coeffs)
    info["sl12_order"] = str(sl_order(12, spec))
    info["points_F_q^12"] = str(spec.q**12 - 1)
    info["guard"] = point_guard(None)
    return info


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def exit_code(reports) -> int:
    verdicts = [r.verdict for r in reports]
    if "fail" in verdicts:
        return EXIT_FAIL
    if "infeasible" in verdicts:
        return EXIT_INFEASIBLE
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_PASS
    try:
        if args.command == "field":
            info = _field_info(args)
            text = json.dumps(info, indent=2) + "\n" if args.json else "".join(
                f"{k}: {v}\n" for k, v in info.items())
            _emit(text, args.out)
            return EXIT_PASS
        if args.command == "verify":
            reports = _run_verify(args)
        elif args.command == "certify":
            reports = _run_certify(args)
        else:
            if args.p_max < 2 or not args.a or min(args.a) < 1 or args.ts < 1:
                raise UsageError("need --p-max >= 2, degrees >= 1 and --ts >= 1")
            reports = certify.sweep(args.p_max, args.a, ts_per_cell=args.ts, randomized=args.randomized,
                                    guard=args.guard, seed=args.seed)
    except (UsageError, FieldError, GeneratorError) as exc:
        print(f"sl12gen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.json:
        payload = [r.to_dict() for r in reports] if args.command == "sweep" else reports[0].to_dict()
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "\n".join(r.to_text() for r in reports) + "\n"
    _emit(text, args.out)
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
