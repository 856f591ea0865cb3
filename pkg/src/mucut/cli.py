"""Command-line front end.

Subcommands:

  * ``parse`` / ``print`` — read a formula (``.form``) or finite proof
    (``.sproof``) and emit its canonical text;
  * ``check`` — check a finite proof against a system (``s``, ``sinf``,
    ``omega:K``) and print the report;
  * ``pipeline`` — run embed / eliminate / collapse / to-sinf on a finite
    S proof, write one observation file per stage plus a summary, and
    print the one-line summary;
  * ``corpus`` — write the built-in example proofs as ``.sproof`` files.

Exit codes: 0 ok; 1 check failure; 2 parse error; 3 fuel exhaustion;
4 internal invariant failure.  All output is deterministic: equal inputs
and flags produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from mucut.checker import (
    SYSTEM_S,
    check_finite,
    level_bound,
    parse_system,
)
from mucut.collapse import pipeline
from mucut.corpus import CORPUS
from mucut.errors import FuelExhausted, InternalInvariantError
from mucut.proofs import (
    Cut,
    observe,
    observation_errors,
    observation_rules,
    observation_sequents,
)
from mucut.sexpr import (
    SexprError,
    dumps,
    observation_dumps,
    proof_dumps,
    proof_loads,
    report_dumps,
    step_to_sx,
    summary_to_sx,
)
from mucut.syntax import ParseError, parse_formula, print_form

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_PARSE = 2
EXIT_FUEL = 3
EXIT_INVARIANT = 4

DEFAULT_DEPTH = 6
DEFAULT_SAMPLES = (0, 1, 2)
DEFAULT_PROBES = 1
DEFAULT_FUEL = 100_000

STAGES = ("embedded", "eliminated", "collapsed", "sinf")

CORPUS_FILES = (
    ("e1-ind-top", "ind-top"),
    ("e2-top-cut", "top-cut"),
    ("e3-axmu", "axmu"),
    ("e4-nested", "nested"),
)


def _parse_samples(text):
    try:
        out = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(
            "samples must be comma-separated naturals, e.g. 0,1,2"
        )
    if not out or any(i < 0 for i in out):
        raise argparse.ArgumentTypeError(
            "samples must be comma-separated naturals, e.g. 0,1,2"
        )
    return out


def _load(path):
    """Read a .form or .sproof file; returns ('formula', f) or ('proof', p)."""
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    suffix = p.suffix
    if suffix == ".form":
        return "formula", parse_formula(text)
    if suffix == ".sproof":
        return "proof", proof_loads(text)
    raise ParseError("unsupported file extension %r (want .form or .sproof)" % suffix, text, 0)


def _load_proof(path):
    kind, obj = _load(path)
    if kind != "proof":
        raise ParseError("expected a .sproof file", "", 0)
    return obj


def cmd_print(args):
    kind, obj = _load(args.file)
    if kind == "formula":
        sys.stdout.write(print_form(obj) + "\n")
    else:
        sys.stdout.write(proof_dumps(obj))
    return EXIT_OK


def cmd_check(args):
    proof = _load_proof(args.file)
    system = parse_system(args.system)
    report = check_finite(proof, system)
    sys.stdout.write(report_dumps(report))
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_pipeline(args):
    proof = _load_proof(args.file)
    report = check_finite(proof, SYSTEM_S)
    if not report.ok:
        sys.stderr.write("input is not a valid S proof:\n")
        sys.stderr.write(report_dumps(report))
        return EXIT_CHECK

    src = Path(args.file)
    out_dir = Path(args.out) if args.out else src.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = src.stem

    steps = []
    stages = pipeline(
        proof,
        fuel=args.fuel,
        trace=lambda path, case, rank: steps.append((path, case, rank)),
    )

    observations = {}
    for name in STAGES:
        o = observe(stages[name], args.depth, args.samples, args.probes)
        observations[name] = o
        (out_dir / ("%s.%s.obs" % (stem, name))).write_text(
            observation_dumps(o), encoding="utf-8"
        )

    if args.trace:
        lines = "".join(
            dumps(step_to_sx(path, case, rank)) + "\n" for path, case, rank in steps
        )
        Path(args.trace).write_text(lines, encoding="utf-8")

    errors = []
    for name in STAGES:
        errors.extend((name, e) for e in observation_errors(observations[name]))
    if errors:
        name, first = errors[0]
        sys.stderr.write("stage %s produced an error leaf: %s\n" % (name, first))
        return EXIT_INVARIANT

    final = observations["sinf"]
    cut_free = not any(isinstance(r, Cut) for r in observation_rules(final) if r)
    nubar_free = all(
        s.max_nubar_level() < 0 for s in observation_sequents(final)
    )
    summary = dumps(summary_to_sx(proof.conclusion, cut_free, nubar_free)) + "\n"
    (out_dir / (stem + ".summary")).write_text(summary, encoding="utf-8")
    sys.stdout.write(
        "cut-free: %s, nubar-free: %s\n"
        % ("yes" if cut_free else "no", "yes" if nubar_free else "no")
    )
    return EXIT_OK if cut_free and nubar_free else EXIT_CHECK


def cmd_corpus(args):
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for filename, name in CORPUS_FILES:
        proof = CORPUS[name]()
        path = out_dir / (filename + ".sproof")
        path.write_text(proof_dumps(proof), encoding="utf-8")
        endseq = ", ".join(print_form(f) for f in proof.conclusion)
        sys.stdout.write("%s.sproof\tlevel %d\t{%s}\n" % (
            filename, level_bound(proof), endseq,
        ))
    return EXIT_OK


def _add_config(sub):
    sub.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                     help="observation depth (default %d)" % DEFAULT_DEPTH)
    sub.add_argument("--samples", type=_parse_samples, default=DEFAULT_SAMPLES,
                     help="nu-premise indices, comma-separated (default 0,1,2)")
    sub.add_argument("--probes", type=int, default=DEFAULT_PROBES,
                     help="family probe budget (default %d)" % DEFAULT_PROBES)
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                     help="reduction fuel (default %d)" % DEFAULT_FUEL)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mucut",
        description="Syntactic cut elimination for the one-variable modal mu-calculus",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name in ("parse", "print"):
        sp = subs.add_parser(name, help="emit the canonical text of a .form or .sproof file")
        sp.add_argument("file")
        sp.set_defaults(func=cmd_print)

    sp = subs.add_parser("check", help="check a finite proof against a system")
    sp.add_argument("file")
    sp.add_argument("--system", default="s",
                    help="s, sinf, or omega:K (default s)")
    _add_config(sp)
    sp.set_defaults(func=cmd_check)

    sp = subs.add_parser("pipeline",
                         help="embed, eliminate cuts, collapse, and observe every stage")
    sp.add_argument("file")
    sp.add_argument("--out", help="output directory (default: next to the input)")
    sp.add_argument("--trace", help="write one (step ...) line per reduction to this file")
    _add_config(sp)
    sp.set_defaults(func=cmd_pipeline)

    sp = subs.add_parser("corpus", help="write the example proofs as .sproof files")
    sp.add_argument("--out", help="output directory (default: current directory)")
    sp.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SexprError, ValueError) as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write("io error: %s\n" % exc)
        return EXIT_PARSE
    except FuelExhausted as exc:
        sys.stderr.write("fuel exhausted: %s\n" % exc)
        return EXIT_FUEL
    except InternalInvariantError as exc:
        sys.stderr.write("internal invariant failure: %s\n" % exc)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
