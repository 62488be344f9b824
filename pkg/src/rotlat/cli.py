"""Command-line interface: ``rotlat <command> ...``.

Structured output goes to stdout as JSON (or DOT with ``--format dot``),
diagnostics to stderr. Exit status: 0 success, 1 a verification found
counterexamples, 2 invalid input or arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from . import io
from .congruence import (
    all_congruences,
    is_simple,
    is_subdirectly_irreducible,
    monolith,
    subdirect_factors,
)
from .harness import (
    build_corpus,
    verify_lemmas,
    verify_si_classification,
    verify_variety_lattice,
)
from .rotational import (
    RotationalLattice,
    direct_product,
    free_one_generated,
    recognize_cube,
    rotational_cube,
)
from .varieties import TheoremViolation, embed_cube, hs_cube, validate_ideal, variety_contains_algebra

log = logging.getLogger("rotlat")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 too, but via SystemExit
        raise UsageError(message)


def _read_algebra(path: str) -> RotationalLattice:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    return io.algebra_from_json(io.loads(text))


def _product_factor(spec: str) -> RotationalLattice:
    if spec.isdigit():
        return rotational_cube(int(spec))
    if spec[:1] in "Bb" and spec[1:].isdigit():
        return rotational_cube(int(spec[1:]))
    return _read_algebra(spec)


def _emit(args: argparse.Namespace, doc: Any, dot: str | None = None) -> None:
    if getattr(args, "format", "json") == "dot":
        if dot is None:
            raise UsageError(f"--format dot is not available for '{args.command}'")
        sys.stdout.write(dot)
    else:
        json.dump(doc, sys.stdout, indent=None if args.compact else 2)
        sys.stdout.write("\n")


def cmd_cube(args):
    A = rotational_cube(args.n)
    _emit(args, io.algebra_to_json(A), io.algebra_to_dot(A))


def cmd_free(args):
    F = free_one_generated(args.n)
    doc = io.algebra_to_json(F.algebra)
    doc["generator"] = F.generator
    doc["terms"] = [sorted(sorted(i for i in range(F.n) if s >> i & 1) for s in t) for t in F.terms]
    _emit(args, doc, io.algebra_to_dot(F.algebra))


def cmd_product(args):
    A = direct_product([_product_factor(s) for s in args.specs])
    _emit(args, io.algebra_to_json(A), io.algebra_to_dot(A))


def cmd_con(args):
    con = all_congruences(_read_algebra(args.file))
    _emit(args, io.con_lattice_to_json(con), io.con_lattice_to_dot(con))


def cmd_si(args):
    A = _read_algebra(args.file)
    mono = monolith(A)
    _emit(args, {
        "subdirectly_irreducible": is_subdirectly_irreducible(A),
        "simple": is_simple(A),
        "monolith": None if mono is None else io.congruence_to_json(mono),
        "cube": recognize_cube(A),
    })


def cmd_factors(args):
    A = _read_algebra(args.file)
    _emit(args, [
        {
            "congruence": io.congruence_to_json(theta),
            "factor": io.algebra_to_json(F),
            "cube": recognize_cube(F),
        }
        for theta, F in subdirect_factors(A)
    ])


def cmd_hs(args):
    m, n = args.m, args.n
    ok = hs_cube(m, n)
    reason = f"{m} divides {n}" if ok else f"{m} does not divide {n}"
    _emit(args, {"hs": ok, "reason": reason})


def cmd_embed(args):
    if not hs_cube(args.m, args.n):
        raise UsageError(f"{args.m} does not divide {args.n}: no embedding exists")
    f = embed_cube(args.m, args.n)
    _emit(args, {"kind": "embedding", "m": args.m, "n": args.n, "map": list(f.map), "type": f.kind})


def cmd_member(args):
    try:
        members = [int(x) for x in args.ideal.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --ideal list {args.ideal!r}") from exc
    X = validate_ideal(members)
    result = variety_contains_algebra(X, _read_algebra(args.file))
    _emit(args, io.membership_to_json(X, result))


def cmd_verify(args) -> int:
    if args.what == "si":
        reports = [verify_si_classification(build_corpus(args.max_poset))]
    elif args.what == "lemmas":
        reports = [verify_lemmas(build_corpus(args.max_poset))]
    else:
        reports = [verify_variety_lattice(args.max)]
    for r in reports:
        log.info("%s: %d instances, %d counterexamples, %.2fs",
                 r.check, r.instances, len(r.counterexamples), r.wall_time)
    _emit(args, reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports])
    return 0 if all(r.ok for r in reports) else 1


def cmd_enumerate(args):
    corpus = build_corpus(args.max_poset, include_trivial=not args.no_trivial)
    _emit(args, [
        {
            "name": item.name,
            "size": item.algebra.size,
            "order": item.algebra.order,
            "cube": recognize_cube(item.algebra),
            "algebra": io.rot_poset_to_json(item.poset, item.sigma),
        }
        for item in corpus
    ])


def cmd_export_dot(args):
    sys.stdout.write(io.algebra_to_dot(_read_algebra(args.file)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotlat", description="Distributive rotational lattice workbench")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help, dot=False):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--compact", action="store_true", help="single-line JSON")
        p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
        if dot:
            p.add_argument("--format", choices=["json", "dot"], default="json")
        return p

    command("cube", cmd_cube, "the rotational cube B_N", dot=True).add_argument("n", type=int)
    command("free", cmd_free, "free algebra on one generator with g^N = id", dot=True).add_argument("n", type=int)
    command("product", cmd_product, "direct product; SPEC is N, BN or a JSON file", dot=True).add_argument(
        "specs", nargs="+", metavar="SPEC")
    command("con", cmd_con, "congruence lattice", dot=True).add_argument("file")
    command("si", cmd_si, "subdirect irreducibility and simplicity").add_argument("file")
    command("factors", cmd_factors, "subdirect factors").add_argument("file")
    for name, func, help in (("hs", cmd_hs, "is B_M in HS(B_N)?"), ("embed", cmd_embed, "embedding B_M -> B_N")):
        p = command(name, func, help)
        p.add_argument("m", type=int)
        p.add_argument("n", type=int)
    p = command("member", cmd_member, "membership in the variety named by an ideal")
    p.add_argument("--ideal", required=True, help="comma-separated divisor-closed set, e.g. 1,2,4")
    p.add_argument("file")
    p = command("verify", cmd_verify, "run an exhaustive verification sweep")
    p.add_argument("what", choices=["si", "lemmas", "varieties"])
    p.add_argument("--max-poset", type=int, default=None)
    p.add_argument("--max", type=int, default=6)
    p = command("enumerate", cmd_enumerate, "list the corpus")
    p.add_argument("--max-poset", type=int, default=3)
    p.add_argument("--no-trivial", action="store_true")
    command("export-dot", cmd_export_dot, "DOT diagram of an algebra file").add_argument("file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"rotlat: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.command == "verify" and args.max_poset is None:
        args.max_poset = 5 if args.what == "si" else 4
    try:
        status = args.func(args)
    except TheoremViolation as exc:
        print(f"rotlat: theorem violation: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, OSError) as exc:
        print(f"rotlat: {exc}", file=sys.stderr)
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
