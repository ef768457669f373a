"""Command-line interface.

Subcommands: eval, specialize, verify, gram, count, knop-convert.  Exit
codes: 0 success, 1 verification failure, 2 usage or parse error, 3
feasibility guard exceeded.  Given identical flags (including --seed) the
output is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import category as cat
from .concrete import specialize
from .dsl import parse, parse_program
from .errors import (
    ArityMismatch,
    FieldMismatch,
    ParseError,
    RelcatError,
    RequiresEvaluation,
    ScalarParseError,
    TooLarge,
    UnknownGenerator,
)
from .field import parse_q
from .matrix import subspace_count
from .poly import det_poly, rational_roots
from .suites import suite_axioms, suite_functor, suite_knop, suite_lemmas, suite_relinfty

USAGE_ERRORS = (ParseError, ArityMismatch, UnknownGenerator, ScalarParseError, FieldMismatch)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--q", default="2", help="field order, 'p' or 'p^e' (default 2)")
    p.add_argument(
        "--t",
        default=None,
        help="'sym' or an exact rational value for t; unset means symbolic "
        "for eval and t=q^n for specialize",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--n", type=int, default=1, help="specialization rank")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")


def _emit(args, text: str):
    if args.output == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(args.output, "w") as handle:
            handle.write(text + "\n")


def _tmode(args) -> cat.TMode:
    if args.t is None or args.t == "sym":
        return cat.TMode.sym()
    return cat.TMode.at(Fraction(args.t))


def _read_expr(args) -> str:
    if args.file:
        with open(args.expr) as handle:
            return handle.read()
    return args.expr


def _morphism_json(m: cat.Morphism) -> dict:
    return {
        "q": str(m.field),
        "s": m.s,
        "k": m.k,
        "terms": [
            {"coeff": str(coeff), "rel": rel.to_json()} for rel, coeff in m.sorted_terms()
        ],
    }


def cmd_eval(args) -> int:
    field = parse_q(args.q)
    term = parse_program(_read_expr(args), field) if args.file else parse(_read_expr(args), field)
    from .dsl import eval_formal

    morphism = eval_formal(term, field, _tmode(args))
    if args.format == "json":
        _emit(args, json.dumps(_morphism_json(morphism), sort_keys=True))
    else:
        _emit(args, morphism.to_text())
    return 0


def cmd_specialize(args) -> int:
    field = parse_q(args.q)
    term = parse_program(_read_expr(args), field) if args.file else parse(_read_expr(args), field)
    from .dsl import eval_formal

    mode = _tmode(args)
    morphism = eval_formal(term, field, mode)
    if args.t == "sym" and any(c.degree() > 0 for c in morphism.terms.values()):
        raise RequiresEvaluation(
            "expression has symbolic t coefficients but --t sym was requested; "
            "drop --t to substitute t = q^n"
        )
    conc = specialize(morphism, args.n)
    entries = [
        [r, c, int(v) if Fraction(v).denominator == 1 else str(v)]
        for (r, c), v in conc.mat.entries_sorted()
    ]
    payload = {"q": str(field), "n": args.n, "s": conc.s, "k": conc.k, "entries": entries}
    _emit(args, json.dumps(payload, sort_keys=True))
    return 0


SUITES = ("axioms", "lemmas", "functor", "relinfty", "knop")


def cmd_verify(args) -> int:
    field = parse_q(args.q)
    if args.suite == "axioms":
        results = suite_axioms(field, args.n)
    elif args.suite == "lemmas":
        results = suite_lemmas(field, args.n, args.seed)
    elif args.suite == "functor":
        results = suite_functor(field, args.n, args.trials, args.seed, args.max_arity)
    elif args.suite == "relinfty":
        results = suite_relinfty(field, args.n, args.trials, args.seed, args.max_arity)
    else:
        results = suite_knop(field, args.trials, args.seed, args.max_arity)
    passed = all(r.passed for r in results)
    if args.format == "json":
        _emit(args, json.dumps(
            {
                "suite": args.suite,
                "pass": passed,
                "checks": [{"name": r.name, "pass": r.passed, "detail": r.detail} for r in results],
            },
            sort_keys=True,
        ))
    else:
        lines = [r.line() for r in results]
        lines.append(f"{'PASS' if passed else 'FAIL'} suite {args.suite}")
        _emit(args, "\n".join(lines))
    return 0 if passed else 1


def cmd_gram(args) -> int:
    field = parse_q(args.q)
    rels, mat = cat.gram(field, args.s, args.k, _tmode(args))
    det = det_poly(mat)
    roots = [] if det.is_zero() else rational_roots(det)
    if args.format == "json":
        payload = {
            "q": str(field),
            "s": args.s,
            "k": args.k,
            "relations": [r.to_text() for r in rels],
            "matrix": [[str(entry) for entry in row] for row in mat],
            "det": str(det),
            "rational_roots": [str(r) for r in roots],
        }
        _emit(args, json.dumps(payload, sort_keys=True))
    else:
        lines = [f"basis ({len(rels)} relations):"]
        lines += [f"  {r.to_text()}" for r in rels]
        lines.append("gram matrix:")
        lines += ["  [" + ", ".join(str(entry) for entry in row) + "]" for row in mat]
        lines.append(f"det = {det}")
        lines.append("rational roots: " + (", ".join(map(str, roots)) if roots else "(none)"))
        _emit(args, "\n".join(lines))
    return 0


def cmd_count(args) -> int:
    field = parse_q(args.q)
    count = subspace_count(field, args.s + args.k)
    if args.format == "json":
        _emit(args, json.dumps({"q": str(field), "s": args.s, "k": args.k, "count": count}))
    else:
        _emit(args, str(count))
    return 0


def cmd_knop_convert(args) -> int:
    field = parse_q(args.q)
    term = parse(args.rel, field)
    from .terms import RelLit

    if not isinstance(term, RelLit):
        raise ParseError("knop-convert expects a single rel(...) literal", 0)
    converted = term.rel.perp()
    _emit(args, converted.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="relcat",
        description="exact calculus of subspace relations, their interpolation "
        "category, and its specializations to finite-rank matrix representations",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression to a canonical morphism")
    p.add_argument("expr", help="expression text, or a path with --file")
    p.add_argument("--file", action="store_true", help="treat expr as a file of bindings")
    _add_common(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("specialize", help="evaluate and specialize to a rank-n matrix")
    p.add_argument("expr")
    p.add_argument("--file", action="store_true")
    _add_common(p)
    p.set_defaults(fn=cmd_specialize)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gram", help="Gram matrix, determinant, and rational roots")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    _add_common(p)
    p.set_defaults(fn=cmd_gram)

    p = sub.add_parser("count", help="dimension of the Hom space [s] -> [k]")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    _add_common(p)
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser(
        "knop-convert",
        help="convert a relation literal between the two basis indexings "
        "(the conversion is the orthogonal complement, an involution, so "
        "--direction only documents intent)",
    )
    p.add_argument("rel", help="a rel(q;s,k;[[...]]) literal")
    p.add_argument("--direction", choices=["to-knop", "from-knop"], default="to-knop")
    _add_common(p)
    p.set_defaults(fn=cmd_knop_convert)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except RequiresEvaluation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RelcatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
