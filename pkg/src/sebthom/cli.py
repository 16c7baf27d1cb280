"""``sebthom`` command line.

Exit codes: 0 success, 2 parse or validation error, 3 unsupported summand,
4 oracle mismatch, 5 non-isolated critical locus, 6 enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .atoms import AtomRegistry, load_atom
from .errors import (
    DomainError,
    NonIsolatedError,
    ParseError,
    ResourceError,
    SebthomError,
    UnknownAtomError,
    UnsupportedSummandError,
    ValidationError,
)
from .expr import PolyLiteral, parse
from .graded import total_rank
from .oracle import DEFAULT_MAX_ENUM, milnor_groebner
from .report import build_report

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3
EXIT_MISMATCH = 4
EXIT_NON_ISOLATED = 5
EXIT_RESOURCE = 6

DEFAULT_SEED = 20240101

SYNTAX = """\
expression syntax:
  join(E, E)            vanishing data of f(x) + g(y)
  suspend(E, m)         add y1^2 + ... + ym^2 (m >= 1)
  pow(a)                x^a (a >= 2)
  quad(m)               y1^2 + ... + ym^2 (m >= 1)
  pham(a1, ..., an)     x1^a1 + ... + xn^an
  atom("name")          custom atom loaded with --atoms
  polynomial            e.g. "x^2 + 3*y^3 - 1/2*z^5"; split into summands in
                        disjoint variables, each of which must be c*x^a

zeta convention: prod_i det(1 - t*h | H^i(F; Q))^((-1)^(i+1)) over unreduced
cohomology of the Milnor fibre F.
"""

MILNOR_NOTE = """\
The Milnor number is dim Q[x]/(df/dx1, ..., df/dxn) computed globally. If f
has critical points other than the origin, the count includes all of them.
"""


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verify", action="store_true", help="run the oracles too")
    common.add_argument(
        "--max-enum",
        type=int,
        default=DEFAULT_MAX_ENUM,
        metavar="N",
        help="bound on enumerated eigenvalues (default %(default)s)",
    )
    common.add_argument(
        "--atoms",
        action="append",
        default=[],
        metavar="PATH",
        help="atom file or directory of *.atom.json files (repeatable)",
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="sebthom",
        description="Vanishing cohomology and monodromy of Thom-Sebastiani sums.",
        epilog=SYNTAX,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "eval", parents=[common], help="compute the invariants of an expression",
        epilog=SYNTAX, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("expr")
    p = sub.add_parser(
        "verify", parents=[common], help="compute and cross-check with every applicable oracle",
        epilog=SYNTAX, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("expr")
    p = sub.add_parser(
        "milnor", parents=[common], help="Milnor number of a polynomial via a Groebner basis",
        epilog=MILNOR_NOTE, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("poly")

    atoms = sub.add_parser("atoms", help="load, list and show custom atoms")
    atoms_sub = atoms.add_subparsers(dest="atoms_command", required=True)
    p = atoms_sub.add_parser("load", parents=[common], help="validate atom files")
    p.add_argument("paths", nargs="+", metavar="PATH", help="files, directories, or - for stdin")
    atoms_sub.add_parser("list", parents=[common], help="names and total ranks")
    p = atoms_sub.add_parser("show", parents=[common], help="full vanishing data of one atom")
    p.add_argument("name")
    return parser


def _registry(paths) -> AtomRegistry:
    registry = AtomRegistry()
    for path in paths:
        registry.load_path(path)
    return registry


def _cmd_eval(args, verify: bool) -> int:
    registry = _registry(args.atoms)
    report = build_report(
        args.expr, registry, verify=verify, max_enum=args.max_enum, seed=args.seed
    )
    out = report.to_json_text() if args.format == "json" else report.to_text()
    sys.stdout.write(out)
    if not report.ok:
        print("error: oracle mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_milnor(args) -> int:
    e = parse(args.poly)
    if not isinstance(e, PolyLiteral):
        raise ValidationError("milnor expects a polynomial, not an atom expression")
    mu = milnor_groebner(e.poly)
    if args.format == "json":
        sys.stdout.write(json.dumps({"input": args.poly, "milnor": mu}) + "\n")
    else:
        print(mu)
    return EXIT_OK


def _cmd_atoms(args) -> int:
    if args.atoms_command == "load":
        registry = _registry(args.atoms)
        loaded = []
        for path in args.paths:
            if path == "-":
                atom = load_atom(sys.stdin.read())
                registry.add(atom, "<stdin>")
                loaded.append(atom)
            else:
                loaded.extend(registry.load_path(path))
        if args.format == "json":
            sys.stdout.write(json.dumps([a.to_json() for a in loaded], indent=2) + "\n")
        else:
            for atom in loaded:
                print(f"{atom.name}\tμ={total_rank(atom.data)}")
        return EXIT_OK
    registry = _registry(args.atoms)
    if args.atoms_command == "list":
        if args.format == "json":
            doc = [{"name": a.name, "milnor": total_rank(a.data)} for a in registry]
            sys.stdout.write(json.dumps(doc) + "\n")
        else:
            for atom in registry:
                print(f"{atom.name}\t{total_rank(atom.data)}")
        return EXIT_OK
    atom = registry.get(args.name)
    if args.format == "json":
        sys.stdout.write(json.dumps(atom.to_json(), indent=2, ensure_ascii=False) + "\n")
    else:
        print(f"{atom.name}: {atom.data}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args, verify=args.verify)
        if args.command == "verify":
            return _cmd_eval(args, verify=True)
        if args.command == "milnor":
            return _cmd_milnor(args)
        return _cmd_atoms(args)
    except UnsupportedSummandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NonIsolatedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_ISOLATED
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ParseError as exc:
        print(f"error: syntax: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValidationError, DomainError, UnknownAtomError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SebthomError as exc:  # pragma: no cover - every subclass is handled above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
