"""Command line: train, evaluate, correct, corrupt, tune.

Exit status: 0 success, 1 usage or configuration error, 2 I/O or parse
error, 3 a confusion set with no test occurrences.
"""
from __future__ import annotations

import argparse
import logging
import math
import re
import sys

from . import model_io
from .corpus import (
    SplitSpec,
    format_tagged_corpus,
    generate_corrupted,
    match_case,
    parse_tagged_corpus,
    read_confusion_sets,
    split_corpus,
    tokenize_plain,
)
from .evaluation import METHODS, emit_report
from .exceptions import ConfigError, CorpusParseError, ModelFormatError
from .system import RunConfig, applied_suggestions, run_evaluation, train_system

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_EMPTY_SET = 3

log = logging.getLogger("tribayes")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path) -> str:
    if path in (None, "-"):
        data = sys.stdin.buffer.read()
        path = "<stdin>"
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusParseError(f"invalid UTF-8 at byte {exc.start}", source=path) from None


def _write_text(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_config(args) -> RunConfig:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    if args.seed is not None:
        config = RunConfig.from_items([("seed", str(args.seed))], config)
    return config


def cmd_train(args) -> int:
    config = _load_config(args)
    if args.train_fraction is not None:
        config = RunConfig.from_items([("train_fraction", str(args.train_fraction))], config)
    sets = read_confusion_sets(_read_text(args.sets), source=args.sets)
    if not sets:
        raise ConfigError(f"{args.sets}: no confusion sets defined")
    corpus = parse_tagged_corpus(_read_text(args.corpus), source=args.corpus)
    train = corpus
    if args.split:
        train, test = split_corpus(corpus, SplitSpec(config.train_fraction, config.seed))
        if args.test_output:
            _write_text(args.test_output, format_tagged_corpus(test))
    system = train_system(train, sets, config)
    if args.split:
        system.provenance["split"] = f"fraction={config.train_fraction!r} seed={config.seed}"
    model_io.save(system, args.output)
    sys.stdout.write("set\ttrain\n")
    for cs in sets:
        sys.stdout.write(f"{cs}\t{system.baseline.train_occurrences(cs)}\n")
    return EXIT_OK


def _methods(text: str) -> tuple:
    names = [m.strip() for m in text.split(",") if m.strip()]
    if "all" in names:
        return METHODS
    bad = [m for m in names if m not in METHODS]
    if bad or not names:
        raise UsageError(f"unknown method(s) {', '.join(bad) or text!r}; choose from {', '.join(METHODS)}, all")
    return tuple(m for m in METHODS if m in names)


def cmd_evaluate(args) -> int:
    methods = _methods(args.method)
    system = model_io.load(args.model)
    test = parse_tagged_corpus(_read_text(args.test), source=args.test)
    report = run_evaluation(system, test, methods, args.corrupted, args.thresholded)
    emit_report(report, tsv_path=args.output, stream=sys.stdout)
    if report.empty_sets:
        for set_id in report.empty_sets:
            log.warning("confusion set %s has zero test occurrences", set_id)
        return EXIT_EMPTY_SET
    return EXIT_OK


_TOKEN = re.compile(r"\S+")


def cmd_correct(args) -> int:
    system = model_io.load(args.model)
    text = _read_text(args.input)
    override = args.threshold_override
    out = []
    sentence_no = 0
    for line in text.splitlines(keepends=True):
        spans = [(m.start(), m.end()) for m in _TOKEN.finditer(line)]
        if not spans:
            if not args.suggest_only:
                out.append(line)
            continue
        sentence_no += 1
        tokens = tokenize_plain(line)[0]
        _, found = system.correct(tokens, not args.no_threshold, override)
        if args.suggest_only:
            for s in found:
                if s.suppressed and not args.show_suppressed:
                    continue
                fields = [str(sentence_no), str(s.position), s.original, s.suggested,
                          repr(float(s.ratio)), s.method]
                if args.show_suppressed:
                    fields.append("suppressed" if s.suppressed else "emitted")
                out.append("\t".join(fields) + "\n")
            continue
        best = applied_suggestions(found)
        for position in sorted(best, reverse=True):
            start, end = spans[position]
            line = line[:start] + match_case(tokens[position], best[position].suggested) + line[end:]
        out.append(line)
    _write_text(args.output, "".join(out))
    return EXIT_OK


def _sets_from(path):
    text = _read_text(path)
    if text.startswith(model_io.MAGIC + "\t"):
        return model_io.loads(text).confusion_sets
    return read_confusion_sets(text, source=path)


def cmd_corrupt(args) -> int:
    sets = _sets_from(args.sets)
    corpus = parse_tagged_corpus(_read_text(args.corpus), source=args.corpus)
    lines = []
    for cs in sets:
        for inst in generate_corrupted(corpus, cs):
            lines.append(f"{' '.join(inst.sentence)}\t{inst.position}\t{inst.intended}\t{inst.planted}\n")
    _write_text(args.output, "".join(lines))
    return EXIT_OK


def cmd_tune(args) -> int:
    system = model_io.load(args.model)
    system.retune(args.steepness)
    model_io.save(system, args.output or args.model)
    for key in sorted(system.thresholds.thresholds):
        sys.stdout.write(f"{key}\t{system.thresholds.thresholds[key]!r}\n")
    return EXIT_OK


def _float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if math.isnan(value):
        raise argparse.ArgumentTypeError("NaN is not allowed")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tribayes", description="Context-sensitive spelling correction.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--seed", type=int)

    p = sub.add_parser("train", parents=[common], help="train a model file")
    p.add_argument("corpus", help="tagged corpus (word/TAG per token)")
    p.add_argument("--sets", required=True, help="confusion-set file")
    p.add_argument("--output", "-o", required=True, help="model file to write")
    p.add_argument("--split", action="store_true", help="hold out a test split before training")
    p.add_argument("--train-fraction", type=_float)
    p.add_argument("--test-output", help="where to write the held-out split")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", parents=[common], help="score a model on tagged test text")
    p.add_argument("model")
    p.add_argument("test", help="tagged test corpus")
    p.add_argument("--method", default="all", help="comma list of base,trigrams,bayes,tribayes or all")
    p.add_argument("--corrupted", action="store_true", help="add correct/corrupted condition scores")
    p.add_argument("--thresholded", action="store_true", help="apply suggestion thresholds")
    p.add_argument("--output", "-o", help="TSV report path")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("correct", parents=[common], help="correct plain text")
    p.add_argument("model")
    p.add_argument("input", nargs="?", default="-", help="plain text, one sentence per line")
    p.add_argument("--suggest-only", action="store_true")
    p.add_argument("--show-suppressed", action="store_true")
    p.add_argument("--threshold-override", type=_float)
    p.add_argument("--no-threshold", action="store_true", help="never suppress suggestions")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("corrupt", parents=[common], help="plant confusion-set errors in test text")
    p.add_argument("sets", help="confusion-set file or model file")
    p.add_argument("corpus")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("tune", parents=[common], help="refit thresholds at a new steepness")
    p.add_argument("model")
    p.add_argument("--steepness", type=_float, required=True)
    p.add_argument("--output", "-o", help="defaults to updating the model in place")
    p.set_defaults(func=cmd_tune)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, UsageError) as exc:
        print(f"tribayes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusParseError, ModelFormatError, OSError) as exc:
        print(f"tribayes: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
