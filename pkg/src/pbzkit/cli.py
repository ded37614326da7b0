"""Command-line interface: ``pbzkit <command> ...``.

Exit codes: 0 for success or a law that holds, 1 when a check fails, 2 for
usage, parse and input errors.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import Sequence

from .algebra import FiniteAlgebra, Signature, trivial_brouwer_extension
from .analysis import Partition, all_congruences, find_embedding, find_isomorphism, monolith, quotient
from .classify import classify
from .constructors import catalog, catalog_names, direct_product, ordinal_sum, symmetric_extension
from .equivalences import bz_of_modal, classify_modal, classify_stone, modal_of_bz, verify_discriminator
from .errors import AlgebraError, NotACongruence, PreconditionFailed
from .facts import FACTS, FACTS_BY_ID
from .formats import format_algebra, load_algebra
from .terms import NAMED_LAWS, check_law, format_law, named_equation, parse_law

OK, FAILED, USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def resolve_algebra(arg: str) -> FiniteAlgebra:
    """A path to an algebra file if one exists, otherwise a catalog name."""
    path = Path(arg)
    if path.is_file():
        return load_algebra(path)
    return catalog(arg)


def _table(A: FiniteAlgebra, values) -> list[str]:
    width = max(len(lab) for lab in A.labels)
    head = " " * width + " | " + " ".join(lab.rjust(width) for lab in A.labels)
    rows = [head, "-" * len(head)]
    for x in range(A.n):
        rows.append(A.label(x).rjust(width) + " | " + " ".join(A.label(int(v)).rjust(width) for v in values[x]))
    return rows


def cmd_catalog(args, out):
    for name in catalog_names():
        A = catalog(name)
        out.append(f"{name:12} {A.signature.value:6} {A.n:3}")
    return OK


def cmd_show(args, out):
    A = resolve_algebra(args.algebra)
    out.append(format_algebra(A).rstrip("\n"))
    return OK


def cmd_check(args, out):
    A = resolve_algebra(args.algebra)
    if args.law in NAMED_LAWS:
        law = named_equation(args.law)
    else:
        law = parse_law(args.law, A.signature)
    cx = check_law(A, law)
    if cx is None:
        out.append("holds")
        return OK
    out.append(f"fails: {format_law(cx.law)} at {cx.describe(A)}")
    return FAILED


def _report(lines, out):
    out.extend(lines)
    return OK


def cmd_classify(args, out):
    A = resolve_algebra(args.algebra)
    return _report(classify(A).lines(A), out)


def cmd_classify_modal(args, out):
    A = resolve_algebra(args.algebra)
    return _report(classify_modal(A).lines(A), out)


def cmd_classify_stone(args, out):
    A = resolve_algebra(args.algebra)
    return _report(classify_stone(A).lines(A), out)


def cmd_embed(args, out):
    f = find_embedding(resolve_algebra(args.pattern), resolve_algebra(args.target), args.sig)
    out.append("none" if f is None else f.format())
    return FAILED if f is None else OK


def cmd_iso(args, out):
    f = find_isomorphism(resolve_algebra(args.a), resolve_algebra(args.b), args.sig)
    out.append("none" if f is None else f.format())
    return FAILED if f is None else OK


def cmd_con(args, out):
    A = resolve_algebra(args.algebra)
    congs = all_congruences(A, args.sig, constants_singleton_only=args.constants_singleton)
    for p in congs:
        out.append(p.format(A))
    m = monolith(A, args.sig)
    out.append(f"# {len(congs)} congruences; monolith: {'none' if m is None else m.format(A)}")
    return OK


def cmd_quotient(args, out):
    A = resolve_algebra(args.algebra)
    p = Partition.parse(A, args.partition)
    out.append(format_algebra(quotient(A, p, args.sig)).rstrip("\n"))
    return OK


def cmd_product(args, out):
    out.append(format_algebra(direct_product(resolve_algebra(args.a), resolve_algebra(args.b))).rstrip("\n"))
    return OK


def cmd_osum(args, out):
    out.append(format_algebra(ordinal_sum(resolve_algebra(args.a), resolve_algebra(args.b))).rstrip("\n"))
    return OK


def cmd_symext(args, out):
    A = symmetric_extension(resolve_algebra(args.l), resolve_algebra(args.k))
    if args.trivial_brouwer:
        A = trivial_brouwer_extension(A)
    out.append(format_algebra(A).rstrip("\n"))
    return OK


def cmd_translate(args, out):
    A = resolve_algebra(args.algebra)
    B = modal_of_bz(A) if args.to_modal else bz_of_modal(A)
    out.append(format_algebra(B).rstrip("\n"))
    return OK


def cmd_discriminator(args, out):
    A = resolve_algebra(args.algebra)
    r = verify_discriminator(A)
    out.append("e(x, y):")
    out.extend(_table(A, r.e_table))
    out.append(f"e(x, x) = 0: {'yes' if r.e_zero_on_diagonal else 'no'}")
    out.append(f"e(x, y) = 1 for x != y: {'yes' if r.e_one_off_diagonal else 'no'}")
    out.append(f"t is the ternary discriminator: {'yes' if r.t_is_discriminator else 'no'}")
    for a, b, c in r.t_failures[:5]:
        got = A.label(int(r.t_table[a, b, c]))
        out.append(f"  t({A.label(a)}, {A.label(b)}, {A.label(c)}) = {got}")
    return OK if r.ok else FAILED


def cmd_verify(args, out):
    if args.fact is not None and args.fact not in FACTS_BY_ID:
        raise _UsageError(f"unknown fact {args.fact!r}; known: {', '.join(FACTS_BY_ID)}")
    selected = [FACTS_BY_ID[args.fact]] if args.fact else sorted(FACTS, key=lambda f: f.id)
    failed = 0
    for fact in selected:
        ok, detail = fact.run()
        failed += not ok
        out.append(f"FACT {fact.id} {'PASS' if ok else 'FAIL'} {fact.citation} {detail}")
    out.append(f"# {len(selected) - failed}/{len(selected)} facts pass")
    return OK if failed == 0 else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pbzkit", description="Finite BZ-lattice and modal De Morgan algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sigs = [s.value for s in Signature]

    def add(name, fn, *positionals, help=None):
        p = sub.add_parser(name, help=help)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(fn=fn)
        return p

    add("catalog", cmd_catalog, help="list built-in algebras")
    add("show", cmd_show, "algebra", help="print an algebra in file format")
    add("check", cmd_check, "algebra", "law", help="check a named or written law")
    add("classify", cmd_classify, "algebra")
    add("classify-modal", cmd_classify_modal, "algebra")
    add("classify-stone", cmd_classify_stone, "algebra")
    add("embed", cmd_embed, "pattern", "target").add_argument("--sig", choices=sigs, default=None)
    add("iso", cmd_iso, "a", "b").add_argument("--sig", choices=sigs, default=None)
    p = add("con", cmd_con, "algebra")
    p.add_argument("--sig", choices=sigs, default=None)
    p.add_argument("--constants-singleton", action="store_true")
    add("quotient", cmd_quotient, "algebra", "partition").add_argument("--sig", choices=sigs, default=None)
    add("product", cmd_product, "a", "b")
    add("osum", cmd_osum, "a", "b")
    add("symext", cmd_symext, "l", "k").add_argument("--trivial-brouwer", action="store_true")
    p = add("translate", cmd_translate, "algebra")
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--to-modal", action="store_true")
    direction.add_argument("--to-bz", action="store_true")
    add("discriminator", cmd_discriminator, "algebra")
    add("verify-paper", cmd_verify, help="re-check the recorded example facts").add_argument("--fact")
    return parser


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command and return ``(exit_code, report_text)``."""
    parser = build_parser()
    out: list[str] = []
    try:
        with redirect_stderr(io.StringIO()), redirect_stdout(io.StringIO()):
            args = parser.parse_args(list(argv))
        code = args.fn(args, out)
    except _UsageError as exc:
        return USAGE, f"{exc}\n{parser.format_help()}"
    except SystemExit as exc:  # --help
        return (OK if not exc.code else USAGE), parser.format_help()
    except (PreconditionFailed, NotACongruence) as exc:
        out.append(f"error: {exc}")
        return FAILED, "\n".join(out) + "\n"
    except (AlgebraError, ValueError) as exc:
        return USAGE, f"error: {type(exc).__name__}: {exc}\n"
    return code, "\n".join(out) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code != USAGE else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
