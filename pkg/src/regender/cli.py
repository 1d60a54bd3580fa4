"""Command-line entry point: ``regender <subcommand> ...``.

Every subcommand reads from a file or ``-`` (stdin) and writes to ``-o`` or
stdout, so stages compose in shell pipelines.  Summaries go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .corpus import (
    DEFAULT_MAX_WORDS,
    CorpusFormatError,
    SplitError,
    SplitSpec,
    filter_segment,
    generate_parallel,
    process_sentence,
    read_parallel_tsv,
    read_tagged_corpus,
    split_corpus,
)
from .morphology import DEFAULT_LEXICON, LexiconFileError, load_lexicon
from .patterns import PatternFileError, default_patterns, load_patterns
from .tagset import GenderClass, parse_tag, parse_treetagger_tag


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8", newline="") as f:
            yield f


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yield f


def _non_negative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _load_rules(args):
    ps = load_patterns(Path(args.patterns).read_text(encoding="utf-8")) if args.patterns else default_patterns()
    lex = DEFAULT_LEXICON
    if args.lexicon:
        lex = load_lexicon(Path(args.lexicon).read_text(encoding="utf-8"))
    return ps, lex


def _sentences(args, stream, errors: Counter):
    def note(err):
        errors["malformed"] += 1
        print(f"warning: {args.input}: {err}; sentence skipped", file=sys.stderr)

    parser = parse_treetagger_tag if args.treetagger else parse_tag
    return read_tagged_corpus(stream, strict=args.strict, tag_parser=parser, on_error=note)


def cmd_filter(args) -> int:
    stats = Counter()
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        for line in fin:
            line = line.rstrip("\r\n")
            reason = filter_segment(line, args.max_words)
            if reason is None:
                stats["kept"] += 1
                fout.write(line + "\n")
            else:
                stats[f"dropped_{reason.value}"] += 1
    print(
        f"kept={stats['kept']} dropped_too_long={stats['dropped_too_long']} "
        f"dropped_non_alpha={stats['dropped_non_alpha']}",
        file=sys.stderr,
    )
    return 0


def cmd_classify(args) -> int:
    ps, lex = _load_rules(args)
    stats, errors = Counter(), Counter()
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        for s in _sentences(args, fin, errors):
            m, _ = process_sentence(s, ps, lex)
            stats[m.outcome.value] += 1
            cat = m.category.value if m.category else "-"
            pos = ",".join(map(str, m.positions)) or "-"
            fout.write(f"{m.outcome.value}\t{cat}\t{pos}\t{s.text()}\n")
    print(f"G={stats['G']} N={stats['N']} U={stats['U']} malformed={errors['malformed']}", file=sys.stderr)
    return 0


def cmd_rewrite(args) -> int:
    ps, lex = _load_rules(args)
    stats, errors = Counter(), Counter()
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        for s in _sentences(args, fin, errors):
            m, out = process_sentence(s, ps, lex)
            stats["changed" if not out.identity else "unchanged"] += 1
            fout.write(out.variant.text() + "\n")
    print(f"changed={stats['changed']} unchanged={stats['unchanged']} malformed={errors['malformed']}", file=sys.stderr)
    return 0


def cmd_gen_parallel(args) -> int:
    ps, lex = _load_rules(args)
    stats, errors = Counter(), Counter()
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        for rec in generate_parallel(_sentences(args, fin, errors), ps, lex):
            stats[rec.label.value] += 1
            fout.write(rec.to_tsv(args.prefix_label) + "\n")
    print(f"G={stats['G']} N={stats['N']} malformed={errors['malformed']}", file=sys.stderr)
    return 0


def cmd_split(args) -> int:
    with _open_in(args.input) as fin:
        records = list(read_parallel_tsv(fin, args.prefix_label))
    train, dev, test = split_corpus(records, SplitSpec(args.dev, args.test, args.seed))
    prefix = args.out_prefix
    review = 0
    for name, part in (("train", train), ("dev", dev), ("test", test)):
        with open(f"{prefix}.{name}.tsv", "w", encoding="utf-8", newline="\n") as f:
            for r in part:
                f.write(r.to_tsv(args.prefix_label) + "\n")
    with open(f"{prefix}.review.tsv", "w", encoding="utf-8", newline="\n") as f:
        for name, part in (("dev", dev), ("test", test)):
            for lineno, r in enumerate(part, 1):
                if r.review:
                    review += 1
                    f.write(f"{name}\t{lineno}\t{r.source}\t{r.target}\n")
    print(f"train={len(train)} dev={len(dev)} test={len(test)} review={review}", file=sys.stderr)
    return 0


def _labelled(args):
    with _open_in(args.input) as fin:
        return [(r.source, r.label) for r in read_parallel_tsv(fin, args.prefix_label)]


def cmd_train_clf(args) -> int:
    from .classifier import Hyperparams, fit_feature_space, save_model, train

    lex = load_lexicon(Path(args.lexicon).read_text(encoding="utf-8")) if args.lexicon else DEFAULT_LEXICON
    data = _labelled(args)
    space = fit_feature_space((t for t, _ in data), max_char_features=args.max_char_features)
    model = train(data, space, Hyperparams(args.lam, args.epochs, args.seed), lex)
    save_model(model, args.model)
    print(
        f"examples={len(data)} dim={space.dim} char_features={len(space.char_vocab)} "
        f"word_features={len(space.word_vocab)} objective={model.history[-1]:.6g}",
        file=sys.stderr,
    )
    return 0


def cmd_predict_clf(args) -> int:
    from .classifier import load_model, predict

    lex = load_lexicon(Path(args.lexicon).read_text(encoding="utf-8")) if args.lexicon else DEFAULT_LEXICON
    model = load_model(args.model)
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        for line in fin:
            text = line.rstrip("\r\n")
            label, score = predict(model, text, lex)
            fout.write(f"{label.value}\t{score:.6f}\t{text}\n")
    return 0


def cmd_eval_rewrite(args) -> int:
    from .evaluation import corpus_error_report

    def triples(stream):
        for lineno, line in enumerate(stream, 1):
            if not line.strip():
                continue
            fields = line.rstrip("\r\n").split("\t")
            if len(fields) < 3 or fields[2] not in ("G", "N"):
                raise CorpusFormatError(lineno, line)
            yield fields[0], fields[1], GenderClass(fields[2])

    with _open_in(args.input) as fin:
        report = corpus_error_report(triples(fin))
    with _open_out(args.output) as fout:
        fout.write((report.to_kv() if args.format == "kv" else report.to_table()) + "\n")
    return 0


def cmd_eval_clf(args) -> int:
    from .classifier import load_model, predict
    from .evaluation import classifier_report

    lex = load_lexicon(Path(args.lexicon).read_text(encoding="utf-8")) if args.lexicon else DEFAULT_LEXICON
    model = load_model(args.model)
    data = _labelled(args)
    preds = [predict(model, text, lex)[0] for text, _ in data]
    report = classifier_report(preds, [g for _, g in data])
    with _open_out(args.output) as fout:
        fout.write((report.to_kv() if args.format == "kv" else report.to_table()) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regender", description="Spanish gender-alternative generation toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log pattern-loader warnings and progress")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help, output=True):
        sp = sub.add_parser(name, help=help, description=help)
        sp.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
        if output:
            sp.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
        sp.set_defaults(func=func)
        return sp

    def tagged(sp):
        sp.add_argument("--patterns", help="pattern file (default: built-in templates)")
        sp.add_argument("--lexicon", help="exception lexicon file (default: built-in)")
        sp.add_argument("--strict", action="store_true", help="abort on malformed input lines")
        sp.add_argument("--treetagger", action="store_true", help="fold fine TreeTagger verb tags (VLfin, VCLIinf, ...)")

    sp = add("filter", cmd_filter, "keep short segments containing letters")
    sp.add_argument("--max-words", type=_positive, default=DEFAULT_MAX_WORDS, help="maximum whitespace words (default: 10)")

    tagged(add("classify", cmd_classify, "label each tagged sentence G, N or U (unmatched)"))
    tagged(add("rewrite", cmd_rewrite, "print the opposite-gender variant of each tagged sentence"))

    sp = add("gen-parallel", cmd_gen_parallel, "build source/target/label TSV from a tagged corpus")
    tagged(sp)
    sp.add_argument("--prefix-label", action="store_true", help="prepend the label token to the source field")

    sp = add("split", cmd_split, "split a parallel TSV into train/dev/test", output=False)
    sp.add_argument("--out-prefix", required=True, help="writes PREFIX.{train,dev,test,review}.tsv")
    sp.add_argument("--dev", type=_non_negative, default=1000, help="dev records (default: 1000)")
    sp.add_argument("--test", type=_non_negative, default=3000, help="test records (default: 3000)")
    sp.add_argument("--seed", type=int, default=0, help="shuffle seed (default: 0)")
    sp.add_argument("--prefix-label", action="store_true", help="input/output sources carry a label prefix")

    sp = add("train-clf", cmd_train_clf, "train the G/N classifier on a parallel TSV", output=False)
    sp.add_argument("--model", required=True, help="model file to write")
    sp.add_argument("--lexicon", help="exception lexicon file (default: built-in)")
    sp.add_argument("--seed", type=int, default=42, help="SGD seed (default: 42)")
    sp.add_argument("--lam", type=float, default=1e-4, help="L2 regularisation strength (default: 1e-4)")
    sp.add_argument("--epochs", type=_positive, default=10, help="passes over the data (default: 10)")
    sp.add_argument("--max-char-features", type=_positive, default=20000, help="character n-gram cap (default: 20000)")
    sp.add_argument("--prefix-label", action="store_true", help="sources carry a label prefix")

    sp = add("predict-clf", cmd_predict_clf, "label plain-text sentences with a trained model")
    sp.add_argument("--model", required=True, help="model file")
    sp.add_argument("--lexicon", help="exception lexicon file (default: built-in)")

    sp = add("eval-rewrite", cmd_eval_rewrite, "error rates from hypothesis/reference/label TSV")
    sp.add_argument("--format", choices=("table", "kv"), default="table")

    sp = add("eval-clf", cmd_eval_clf, "classifier accuracy/precision/recall on a parallel TSV")
    sp.add_argument("--model", required=True, help="model file")
    sp.add_argument("--lexicon", help="exception lexicon file (default: built-in)")
    sp.add_argument("--format", choices=("table", "kv"), default="table")
    sp.add_argument("--prefix-label", action="store_true", help="sources carry a label prefix")
    return p


def _check(args) -> None:
    # file inputs must exist before anything is read or written
    paths = [args.input] + [getattr(args, k, None) for k in ("patterns", "lexicon")]
    if args.command in ("predict-clf", "eval-clf"):
        paths.append(args.model)
    for path in paths:
        if path and path != "-" and not Path(path).is_file():
            raise UsageError(f"no such file: {path}")
    out = getattr(args, "output", None)
    if out and out != "-" and args.input != "-" and Path(out).resolve() == Path(args.input).resolve():
        raise UsageError("output file would overwrite the input")


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for stream in (sys.stdin, sys.stdout):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        _check(args)
        return args.func(args)
    except (UsageError, CorpusFormatError, PatternFileError, LexiconFileError, SplitError, ValueError, OSError) as e:
        print(f"regender {args.command}: error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
