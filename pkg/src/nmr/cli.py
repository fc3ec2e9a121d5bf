"""``nmr`` command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 semantic error,
3 equivalence-check failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import report as rep
from .check import CheckResult, check_default_partitions, check_threshold_partitions
from .defaults import DEFAULT_MAX_DEFAULTS, enumerate_extensions
from .errors import NmrError, ParseError
from .files import TheoryFile, load_theory, load_weights
from .logic import DEFAULT_MAX_PROPS, Signature, models_of, parse_formula, world_set_key
from .partition import default_rules_of, enumerate_partition_sequences, threshold_rules_of
from .ranking import rank_extensions
from .threshold import ThresholdParams, enumerate_filtered_sequences, threshold_probability
from .weights import WorldModel, to_rational, uniform_model

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _epsilon(text: Optional[str]) -> Optional[ThresholdParams]:
    if text is None:
        return None
    try:
        return ThresholdParams(to_rational(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(args) -> TheoryFile:
    return load_theory(args.file, max_props=args.max_props)


def _model(args, sig: Signature) -> WorldModel:
    if getattr(args, "weights", None):
        return load_weights(args.weights, sig)
    return uniform_model(sig)


def _emit(args, report: dict, text: str) -> None:
    print(rep.encode(report) if args.format == "json" else text)


def cmd_extensions(args) -> int:
    tf = _load(args)
    exts = enumerate_extensions(tf.theory, max_defaults=args.max_defaults)
    _emit(args, rep.extensions_report(tf.sig, exts), rep.render_extensions(tf.theory, exts))
    return EXIT_OK


def cmd_threshold(args) -> int:
    params = _epsilon(args.epsilon)
    tf = _load(args)
    if not tf.thresholds:
        raise NmrError("the theory file has no 'threshold' lines")
    queries = [parse_formula(q, tf.sig) for q in args.query]
    m = _model(args, tf.sig)
    coll = tf.collection
    seqs = enumerate_filtered_sequences(coll, m, params, all_orders=args.all_orders)
    qvals = [(q, [threshold_probability(coll, m, s, q) for s in seqs]) for q in queries]
    report = rep.threshold_report(tf.sig, params.epsilon, seqs, qvals, args.all_orders)
    _emit(args, report, rep.render_threshold(report))
    return EXIT_OK


def cmd_partitions(args) -> int:
    tf = _load(args)
    if args.mode == "default":
        rules = default_rules_of(tf.theory)
        eps = None
    else:
        params = _epsilon(args.epsilon)
        if params is None:
            raise UsageError("--mode threshold needs --epsilon")
        rules = threshold_rules_of(tf.collection, _model(args, tf.sig), params)
        eps = params.epsilon
    seqs = enumerate_partition_sequences(tf.sig, tf.facts, rules, max_rules=args.max_defaults)
    report = rep.partitions_report(tf.sig, args.mode, seqs, eps)
    _emit(args, report, rep.render_partitions(tf.sig, report))
    return EXIT_OK


def cmd_rank(args) -> int:
    tf = _load(args)
    ranking = rank_extensions(tf.theory, _model(args, tf.sig))
    report = rep.rank_report(tf.sig, ranking)
    _emit(args, report, rep.render_rank(tf.sig, report))
    return EXIT_OK


def _check_expected(tf: TheoryFile, path: str) -> CheckResult:
    expected = rep.decode_report(Path(path).read_text(encoding="utf-8"))
    if expected.get("command") != "extensions":
        raise UsageError("--expected must be a structured 'extensions' report")
    want = sorted(world_set_key(e["models"]) for e in expected["extensions"])
    got = sorted(e.key() for e in enumerate_extensions(tf.theory))
    problems = [] if want == got else [f"expected extensions {want}, computed {got}"]
    return CheckResult("expected", not problems, problems, want, got)


def cmd_check(args) -> int:
    params = _epsilon(args.epsilon)
    tf = _load(args)
    results: list[CheckResult] = []
    skipped: list[str] = []
    if tf.theory.is_normal:
        results.append(check_default_partitions(tf.theory))
    else:
        skipped.append("defaults (theory is not normal)")
    if params is not None and tf.thresholds:
        results.append(check_threshold_partitions(tf.collection, _model(args, tf.sig), params))
    else:
        skipped.append("thresholds (needs --epsilon and threshold lines)")
    if args.expected:
        results.append(_check_expected(tf, args.expected))
    passed = all(r.passed for r in results)
    report = {
        "command": "check",
        "passed": passed,
        "skipped": skipped,
        "checks": [{"name": r.name, "passed": r.passed, "problems": r.problems} for r in results],
    }
    lines = []
    for r in results:
        lines.append(f"{r.name}: {'PASS' if r.passed else 'FAIL'}")
        lines += [f"    {p}" for p in r.problems]
    lines += [f"skipped: {s}" for s in skipped]
    lines.append("PASS" if passed else "FAIL")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if passed else EXIT_CHECK


def cmd_models(args) -> int:
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    sig = Signature(tuple(props), max_props=args.max_props)
    f = parse_formula(args.formula, sig)
    ws = models_of([f], sig)
    report = rep.models_report(sig, f, ws)
    text = "\n".join([f"{len(ws)} model(s) of {f}", *report["worlds"]])
    _emit(args, report, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-props", type=int, default=DEFAULT_MAX_PROPS, metavar="N")
    common.add_argument("--max-defaults", type=int, default=DEFAULT_MAX_DEFAULTS, metavar="N")

    parser = _Parser(prog="nmr", description="Default extensions, sequential thresholds and partition sequences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extensions", parents=[common], help="list all extensions")
    p.add_argument("file")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("threshold", parents=[common], help="enumerate filtered sequences")
    p.add_argument("file")
    p.add_argument("--weights")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--query", action="append", default=[], metavar="FORMULA")
    p.add_argument("--all-orders", action="store_true")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("partitions", parents=[common], help="enumerate partition sequences")
    p.add_argument("file")
    p.add_argument("--mode", choices=["default", "threshold"], required=True)
    p.add_argument("--weights")
    p.add_argument("--epsilon")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("rank", parents=[common], help="rank extensions by eps_min")
    p.add_argument("file")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("check", parents=[common], help="check extensions and thresholds against partitions")
    p.add_argument("file")
    p.add_argument("--weights")
    p.add_argument("--epsilon")
    p.add_argument("--expected", help="structured extensions report to compare against")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("models", parents=[common], help="list the models of a formula")
    p.add_argument("formula")
    p.add_argument("--props", required=True, help="comma-separated proposition names")
    p.set_defaults(func=cmd_models)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as exc:
        print(f"nmr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NmrError as exc:
        print(f"nmr: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
