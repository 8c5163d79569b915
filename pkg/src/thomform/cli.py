"""Command-line interface: emit forms, run checks, fiber operations,
the signature-(1,1) closed-form comparison, and theta partial sums.

Exit status: 0 all requested work passed, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import checks as checks_mod
from .checks import CHECK_IDS, run_all, run_check
from .km import km_form_at_e
from .liealg import SignatureCtx
from .mq import (
    fiber_integrate,
    fiber_transgression,
    fiber_umq,
    mq_phi0_at_e,
    mq_phi_at_e,
)
from .theta import LatticeSpec, diagonalize_gram, key_str, theta_partial_sum

SCHEMA = "thomform/1"


def _max_pq() -> int:
    cap = checks_mod.MAX_PQ
    env = os.environ.get("THOMFORM_MAX_PQ")
    if env:
        try:
            cap = min(cap, int(env))
        except ValueError:
            raise SystemExit(2)
    return cap


def _check_size(p: int, q: int, parser: argparse.ArgumentParser):
    if p < 1 or q < 1 or p + q > _max_pq():
        parser.error(f"require p >= 1, q >= 1, p + q <= {_max_pq()}")


def _parse_tau(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thomform",
        description="Exact symbolic forms on orthogonal symmetric spaces: "
        "construction and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_emit = sub.add_parser("emit", help="print a canonical form at the basepoint")
    p_emit.add_argument("form", choices=["km", "mq0", "mq"])
    p_emit.add_argument("--p", type=int, required=True)
    p_emit.add_argument("--q", type=int, required=True)
    p_emit.add_argument("--format", choices=["text", "json"], default="text")

    p_verify = sub.add_parser("verify", help="run verification checks")
    p_verify.add_argument("--all", action="store_true")
    p_verify.add_argument("--max-pq", type=int, default=4)
    p_verify.add_argument("--check", choices=sorted(CHECK_IDS))
    p_verify.add_argument("--p", type=int)
    p_verify.add_argument("--q", type=int)
    p_verify.add_argument("--p2", type=int)
    p_verify.add_argument("--q2", type=int)
    p_verify.add_argument("--format", choices=["text", "json"], default="json")

    p_fiber = sub.add_parser("fiber", help="fiberwise Thom-form operations")
    p_fiber.add_argument("--q", type=int, required=True)
    p_fiber.add_argument("--op", choices=["umq", "psi", "integrate"], required=True)

    p_ex = sub.add_parser(
        "example11", help="signature (1,1): machinery vs the closed form"
    )
    p_ex.add_argument("--t", type=Fraction, required=True)
    p_ex.add_argument("--x", type=Fraction, required=True)
    p_ex.add_argument("--xp", type=Fraction, required=True)

    p_theta = sub.add_parser("theta", help="theta partial sum over a lattice")
    p_theta.add_argument("--lattice", required=True, help="lattice JSON file")
    p_theta.add_argument("--tau", type=_parse_tau, required=True)
    p_theta.add_argument("--bound", type=float, required=True)
    return parser


def _emit(args, parser) -> int:
    _check_size(args.p, args.q, parser)
    ctx = SignatureCtx(args.p, args.q)
    form = {"km": km_form_at_e, "mq0": mq_phi0_at_e, "mq": mq_phi_at_e}[args.form](ctx)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "p": args.p, "q": args.q,
                          "form": args.form, "terms": form.to_json()}, indent=2))
    else:
        print(form)
    return 0


def _verify(args, parser) -> int:
    if args.all:
        max_pq = min(args.max_pq, _max_pq())
        results = run_all(max_pq)
    elif args.check:
        params = {}
        if args.check == "splitting":
            for name in ("p", "q", "p2", "q2"):
                if getattr(args, name) is None:
                    parser.error("splitting requires --p --q --p2 --q2")
            params = {"p1": args.p, "q1": args.q, "p2": args.p2, "q2": args.q2}
            _check_size(args.p + args.p2, args.q + args.q2, parser)
        elif args.check in checks_mod._SIGNATURE_CHECKS:
            if args.p is None or args.q is None:
                parser.error(f"{args.check} requires --p and --q")
            _check_size(args.p, args.q, parser)
            params = {"p": args.p, "q": args.q}
        elif args.check in checks_mod._FIBER_CHECKS:
            if args.q is None:
                parser.error(f"{args.check} requires --q")
            _check_size(1, args.q, parser)
            params = {"q": args.q}
        results = [run_check(args.check, **params)]
    else:
        parser.error("verify requires --all or --check ID")
    if args.format == "json":
        print(json.dumps(
            {"schema": SCHEMA, "results": [r.to_json() for r in results]}, indent=2
        ))
    else:
        for r in results:
            extra = f" sigma={r.sign_sigma:+d}" if r.sign_sigma is not None else ""
            wit = f" [{r.witness}]" if r.witness else ""
            print(f"{r.status.upper():4s} {r.check_id} {r.params}{extra}{wit}")
    return 0 if all(r.passed for r in results) else 1


def _fiber(args, parser) -> int:
    if args.q < 1 or args.q + 1 > _max_pq():
        parser.error(f"require 1 <= q <= {_max_pq() - 1}")
    if args.op == "umq":
        print(fiber_umq(args.q))
    elif args.op == "psi":
        print(fiber_transgression(args.q))
    else:
        print(fiber_integrate(fiber_umq(args.q)))
    return 0


def _example11(args, parser) -> int:
    from .checks import example11_machinery, example11_paper

    if args.t <= 0:
        parser.error("t must be positive")
    t, x, xp = float(args.t), float(args.x), float(args.xp)
    lhs = example11_machinery(t, x, xp)
    rhs = example11_paper(t, x, xp)
    print(f"machinery:   {lhs!r}")
    print(f"closed form: {rhs!r}")
    print(f"difference:  {abs(lhs - rhs)!r}")
    return 0 if abs(lhs - rhs) <= 1e-12 else 1


def _theta(args, parser) -> int:
    spec = LatticeSpec.load(args.lattice)
    if spec.p + spec.q > _max_pq():
        parser.error(f"lattice rank exceeds the cap {_max_pq()}")
    dl = diagonalize_gram(spec)
    sums, tail = theta_partial_sum(dl, args.tau, args.bound)
    print(json.dumps({
        "schema": SCHEMA,
        "label": spec.label,
        "tau": [args.tau.real, args.tau.imag],
        "bound": args.bound,
        "tail_estimate": tail,
        "coefficients": {
            key_str(k): [v.real, v.imag] for k, v in sorted(sums.items())
        },
    }, indent=2))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handler = {
        "emit": _emit,
        "verify": _verify,
        "fiber": _fiber,
        "example11": _example11,
        "theta": _theta,
    }[args.command]
    try:
        return handler(args, parser)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
