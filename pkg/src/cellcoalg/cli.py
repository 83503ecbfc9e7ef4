"""Command-line interface: ``cellcoalg <subcommand> ...``.

Every subcommand writes one JSON document with sorted keys (``selfcheck``
writes a table).  Exit codes: 0 success, 2 malformed input or arguments,
3 violated precondition, 4 a checked identity failed (named on stderr).
Nothing is written to the output on failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import cinfty
from . import cochains as co
from .cubical import CUBE_MODEL
from .einfty import psi
from .io import InputError, dumps, load_coalgebra, load_complex
from .scalars import F2, is_prime, prime_field, ring_from_flag
from .selfcheck import MUTATIONS, format_table, run_selfcheck
from .simplicial import SIMPLEX_MODEL

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 2, 3, 4


class InvariantFailure(Exception):
    def __init__(self, identity: str, detail=None):
        super().__init__(identity)
        self.identity = identity
        self.detail = detail


# subcommands ---------------------------------------------------------------------------

def cmd_cohomology(args) -> dict:
    ring = ring_from_flag(args.ring)
    cx = load_complex(args.input)
    H = co.cohomology(cx, ring)
    out = H.to_json()
    out["complex"] = {"dimension": cx.dimension, "f_vector": cx.f_vector(),
                      "euler_characteristic": cx.euler_characteristic()}
    return out


def cmd_cup(args) -> dict:
    if (args.simplex is None) == (args.cube is None):
        raise InputError("give exactly one of --simplex N or --cube N")
    model, n = (SIMPLEX_MODEL, args.simplex) if args.simplex is not None else (CUBE_MODEL, args.cube)
    if args.r < 2 or args.i < 0 or n < 0:
        raise co.PreconditionError("need r >= 2, i >= 0 and a nonnegative dimension")
    value = psi(model, args.r, args.i).top(n)
    terms = sorted(value.items())
    return {"model": model.name, "r": args.r, "i": args.i,
            "cell": model.to_json(model.top(n)),
            "value": [[[model.to_json(c) for c in lab], coeff] for lab, coeff in terms]}


def _perturbation_check(H, degree_ops, rng, trials: int = 5):
    """Recompute each column on representatives moved by random coboundaries."""
    for d, op in degree_ops:
        for j, rep in enumerate(H.representatives(d)):
            base = co._coords(H, op(rep))
            for _ in range(trials):
                moved = rep + co.random_coboundary(H.complex, d, H.ring, rng)
                if co._coords(H, op(moved)) != base:
                    raise InvariantFailure("well-definedness under coboundary perturbation",
                                           {"degree": d, "representative": j})


def cmd_steenrod(args) -> dict:
    cx = load_complex(args.input)
    if args.family == "sq":
        if args.k is None:
            raise InputError("steenrod sq needs --k")
        ring, name = F2, f"Sq^{args.k}"

        def op(a):
            return co.steenrod_square(args.k, a)
    else:
        if args.p is None or args.s is None:
            raise InputError("steenrod podd needs --p and --s")
        if args.p == 2 or not is_prime(args.p):
            raise co.PreconditionError("podd needs an odd prime --p")
        ring = prime_field(args.p)
        name = ("beta " if args.bockstein else "") + f"P^{args.s}"

        def op(a):
            return co.power_operation(args.p, args.s, int(args.bockstein), a,
                                      normalized=not args.raw)
    H = co.cohomology(cx, ring)
    matrices = {str(d): co.operation_matrix(H, d, op) for d in range(cx.dimension + 1)}
    if args.seed is not None:
        _perturbation_check(H, [(d, op) for d in range(cx.dimension + 1)],
                            random.Random(args.seed))
    out = {"operation": name, "ring": ring.flag(), "dims": H.dims, "matrices": matrices}
    if args.family == "podd":
        out["normalized"] = not args.raw
    return out


def _field_from_p(p: int):
    if not is_prime(p):
        raise co.PreconditionError("--p must be prime")
    return prime_field(p)


def cmd_relation(args) -> dict:
    cx = load_complex(args.input)
    H = co.cohomology(cx, _field_from_p(args.p))
    if args.command == "cartan":
        rep = co.cartan_report(H, args.max_degree)
    else:
        rep = co.adem_report(H, args.max_degree)
    if not rep.holds:
        raise InvariantFailure(rep.name, rep.failures[:5])
    return rep.to_json()


def cmd_quillen(args) -> dict:
    C = load_coalgebra(args.input)
    d = cinfty.quillen_construction(C, args.weight)
    res = cinfty.check_square_zero(d)
    if not res["holds"]:
        raise InvariantFailure("quillen d^2 = 0", res)
    return {"weight": args.weight, "differential": d.to_json(), "d_squared_zero": True}


def cmd_ls(args) -> dict:
    N = args.weight
    d = cinfty.ls_interval(N)
    if not args.verify:
        return {"weight": N, "differential": d.to_json()}
    sp = d.space
    a, b, e = (cinfty.TensorSeries.generator(sp, g, N) for g in ("a", "b", "e"))
    sq0 = cinfty.check_square_zero(d)
    out = {"d_squared_zero": sq0["holds"],
           "a_flat": cinfty.is_flat(a, d)["holds"],
           "b_flat": cinfty.is_flat(b, d)["holds"]}
    end = cinfty.flow(e, a, 1, d)
    out["flow_endpoint"] = "b" if end == b else end.serialize()
    for key, ok in (("d_squared_zero", out["d_squared_zero"]), ("a_flat", out["a_flat"]),
                    ("b_flat", out["b_flat"]), ("flow_endpoint", out["flow_endpoint"] == "b")):
        if not ok:
            raise InvariantFailure(f"interval {key}", out)
    return out


def cmd_selfcheck(args):
    rows = run_selfcheck(args.mutate, seed=args.seed)
    text = format_table(rows)
    failed = [name for name, ok, _ in rows if not ok]
    return text, failed


# argument parsing ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cellcoalg",
                                description="Exact coalgebra structures on cellular chains.")
    p.add_argument("--output", "-o", help="write the result here instead of standard output")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", "-o", default=argparse.SUPPRESS,
                        help="write the result here instead of standard output")

    c = sub.add_parser("cohomology", help="cohomology with representatives")
    c.add_argument("input", help="complex JSON file or the name of a bundled sample")
    c.add_argument("--ring", default="f2", help="z, q, f2, f3, f5, ...")
    common(c)

    c = sub.add_parser("cup", help="cup-(r,i) coproduct on a standard cell")
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--i", type=int, default=0)
    c.add_argument("--simplex", type=int, metavar="N")
    c.add_argument("--cube", type=int, metavar="N")
    common(c)

    c = sub.add_parser("steenrod", help="matrices of Steenrod operations per degree")
    c.add_argument("family", choices=("sq", "podd"))
    c.add_argument("input")
    c.add_argument("--k", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--bockstein", action="store_true", help="beta P^s instead of P^s")
    c.add_argument("--raw", action="store_true", help="do not divide by the P^0 scalar")
    c.add_argument("--seed", type=int, help="also verify well-definedness with this seed")
    common(c)

    for name in ("cartan", "adem"):
        c = sub.add_parser(name, help=f"check the {name.capitalize()} relations")
        c.add_argument("input")
        c.add_argument("--p", type=int, default=2)
        c.add_argument("--max-degree", type=int, default=4)
        common(c)

    c = sub.add_parser("quillen", help="Quillen construction of a cocommutative coalgebra")
    c.add_argument("input")
    c.add_argument("--weight", type=int, default=6)
    common(c)

    c = sub.add_parser("ls-interval", help="the Lawrence-Sullivan interval")
    c.add_argument("--weight", type=int, default=8)
    c.add_argument("--verify", action="store_true")
    common(c)

    c = sub.add_parser("selfcheck", help="run the invariant suite")
    c.add_argument("--mutate", choices=MUTATIONS)
    c.add_argument("--seed", type=int, default=7)
    common(c)
    return p


_COMMANDS = {"cohomology": cmd_cohomology, "cup": cmd_cup, "steenrod": cmd_steenrod,
             "cartan": cmd_relation, "adem": cmd_relation, "quillen": cmd_quillen,
             "ls-interval": cmd_ls}


def _fail(code: int, kind: str, message: str, **extra) -> int:
    doc = {"error": kind, "message": message}
    doc.update(extra)
    sys.stderr.write(json.dumps(doc, sort_keys=True, default=str) + "\n")
    return code


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)      # argparse exits with status 2 by itself
    if getattr(args, "weight", 1) < 1:
        return _fail(EXIT_PRECONDITION, "precondition", "--weight must be at least 1")
    try:
        if args.command == "selfcheck":
            text, failed = cmd_selfcheck(args)
            if failed:
                sys.stderr.write(text)
                return _fail(EXIT_INVARIANT, "invariant", "selfcheck failed",
                             identity=failed[0], failed=failed)
        else:
            text = dumps(_COMMANDS[args.command](args))
    except InputError as exc:
        return _fail(EXIT_PARSE, "parse", str(exc))
    except InvariantFailure as exc:
        return _fail(EXIT_INVARIANT, "invariant", f"identity failed: {exc.identity}",
                     identity=exc.identity, detail=exc.detail)
    except co.PreconditionError as exc:
        return _fail(EXIT_PRECONDITION, "precondition", str(exc))
    except ValueError as exc:
        return _fail(EXIT_PARSE, "parse", str(exc))
    _emit(text, args.output)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
