"""Command-line entry point: ``braidcat {verify,act,wordeq,rep}``."""
from __future__ import annotations

import argparse
import json
import sys

from . import braids as br
from .algebra import build_algebra
from .complexes import complex_from_json, complex_to_json, format_complex, stalk
from .scalars import field_from_name
from .suites import SUITE_NAMES, InvalidRank, run_suite
from .twists import DEFAULT_MAX_SUMMANDS, SummandCapExceeded, WordParseError, parse_functor_word, word_apply

WORD_HELP = """\
functor words: whitespace-separated letters applied right to left,
  F<i>, F<i>^-1   twists over the Nakayama algebra
  R<i>, R<i>^-1   twists over the zigzag algebra
  H<i>, H<i>^-1   shorthand for F<i> F<i+1> F<i>^-1 (indices mod n)
braid words: a<i> (complete graph), s<i> (type A), h<i> (affine), b<i> (type B),
  each optionally followed by ^-1; indices are explicit numerals.
"""


class UsageError(ValueError):
    pass


def _field(text: str):
    try:
        return field_from_name(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _add_common(p: argparse.ArgumentParser, n_required: bool = True) -> None:
    p.add_argument("--n", type=int, required=n_required, help="rank (number of vertices)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--field", default="rational", help="rational or fp:<prime>")
    p.add_argument("--max-summands", type=int, default=DEFAULT_MAX_SUMMANDS,
                   help="abort when an intermediate complex exceeds this many summands")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidcat", description="Exact braid group actions on derived categories.",
                                     epilog=WORD_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a named verification suite")
    _add_common(p)
    p.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    p.add_argument("--jobs", type=int, default=1, help="checks run concurrently")

    p = sub.add_parser("act", help="apply a functor word to a complex and print its minimal form",
                       epilog=WORD_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("algebra", choices=("nakayama", "zigzag"))
    p.add_argument("word", help='functor word, e.g. "F1 F2^-1"; "" is the identity')
    p.add_argument("on", help="P<i>, Q<i>, or a path to a JSON complex")
    _add_common(p)

    p = sub.add_parser("wordeq", help="compare two braid words through their actions",
                       epilog=WORD_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("group", help="Kn, An, Affine or Bn")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--bn-variant", choices=("literal", "conjugate"), default="literal",
                   help="functor assigned to b_i for i < n")
    _add_common(p)

    p = sub.add_parser("rep", help="evaluate the reflection representation of a complete-graph braid word")
    p.add_argument("word", help='braid word in a<i>, or "eta-witness"')
    p.add_argument("vector", help="basis label v<i>")
    _add_common(p)
    return parser


def _target(args, algebra):
    on = args.on
    if on[:1] in "PQ" and on[1:].isdigit():
        want = "nakayama" if on[0] == "P" else "zigzag"
        if want != algebra.kind:
            raise UsageError(f"{on} is a {want} projective, not a {algebra.kind} one")
        v = int(on[1:])
        if v not in algebra.vertices:
            raise UsageError(f"vertex {v} out of range 1..{args.n}")
        return stalk(algebra, v)
    with open(on) as fh:
        X = complex_from_json(json.load(fh), algebra.field)
    if X.algebra.key != algebra.key:
        raise UsageError(f"complex in {on} lives over {X.algebra.kind} n={X.algebra.n}")
    return X


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.n, args.seed, _field(args.field), args.jobs, args.max_summands)
    print(report.to_json() if args.format == "json" else report.to_text())
    return report.exit_code


def cmd_act(args) -> int:
    algebra = build_algebra(args.algebra, args.n, _field(args.field))
    word = parse_functor_word(args.word, args.n)
    family = "F" if args.algebra == "nakayama" else "R"
    bad = [str(l) for l in word.letters if l.family != family]
    if bad:
        raise UsageError(f"letters {' '.join(bad)} do not act on the {args.algebra} algebra")
    result = word_apply(word, _target(args, algebra), args.max_summands)
    print(json.dumps(complex_to_json(result), indent=2) if args.format == "json" else format_complex(result))
    return 0


def cmd_wordeq(args) -> int:
    group = br.canonical_group(args.group)
    w1 = br.parse_braid_word(args.word1, group, args.n)
    w2 = br.parse_braid_word(args.word2, group, args.n)
    verdict = br.oracle_compare(group, w1, w2, args.n, seed=args.seed, field=_field(args.field),
                                bn_variant=args.bn_variant, max_summands=args.max_summands)
    if args.format == "json":
        print(json.dumps({"verdict": verdict.status, "certificate": verdict.certificate,
                          "evidence": verdict.evidence}, indent=2))
    else:
        print(verdict.status)
        if verdict.status == "ProvenDistinct":
            cert = verdict.certificate
            print(f"  distinguishing projective: {cert['projective']}")
            print(f"  image under word 1: {cert['image_1']}")
            print(f"  image under word 2: {cert['image_2']}")
        print(f"note: {verdict.evidence}")
    return 0


def cmd_rep(args) -> int:
    if args.word == "eta-witness":
        word = br.eta_witness(args.n)
    else:
        word = br.parse_braid_word(args.word, "Kn", args.n)
    vec = br.apply_rep(word, br.basis_vector(args.vector, args.n))
    if args.format == "json":
        print(json.dumps({"word": str(word), "vector": args.vector, "image": vec}))
    else:
        print("(" + ", ".join(str(x) for x in vec) + ")")
    return 0


COMMANDS = {"verify": cmd_verify, "act": cmd_act, "wordeq": cmd_wordeq, "rep": cmd_rep}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InvalidRank, WordParseError, br.BraidParseError, br.RankMismatch,
            SummandCapExceeded, OSError, ValueError) as exc:
        print(f"braidcat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
