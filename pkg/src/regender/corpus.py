"""Segment filtering, vertical-format reading, parallel data generation, splits."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Iterator, Optional

from .morphology import DEFAULT_LEXICON, ExceptionLexicon, RewriteOutcome, rewrite_sentence
from .patterns import MatchResult, Outcome, PatternSet, classify_sentence
from .tagset import Category, GenderClass, PosTag, TaggedSentence, Token, parse_tag

log = logging.getLogger(__name__)

DEFAULT_MAX_WORDS = 10


class DropReason(Enum):
    TOO_LONG = "too_long"
    NON_ALPHA = "non_alpha"


def filter_segment(raw: str, max_words: int = DEFAULT_MAX_WORDS) -> Optional[DropReason]:
    """Return None to keep ``raw``, otherwise the reason it is dropped."""
    if len(raw.split()) > max_words:
        return DropReason.TOO_LONG
    if not any(ch.isalpha() for ch in raw):
        return DropReason.NON_ALPHA
    return None


class CorpusFormatError(ValueError):
    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected 'token<TAB>tag', got {line!r}")
        self.lineno = lineno
        self.line = line


# sentence-final marks that open rather than close a sentence
_OPENING_MARKS = frozenset("¿¡")


def _closes(tok: Token) -> bool:
    return tok.tag is PosTag.FS and tok.surface not in _OPENING_MARKS


def read_tagged_corpus(
    stream: Iterable[str],
    strict: bool = False,
    tag_parser: Callable = parse_tag,
    on_error: Optional[Callable[[CorpusFormatError], None]] = None,
) -> Iterator[TaggedSentence]:
    """Yield sentences from ``token<TAB>tag[<TAB>...]`` lines.

    A blank line always ends a sentence.  Without blank lines, a closing FS
    token (or a run of them, as in ``?!``) ends one too, so raw tagger output
    can be read directly.  Extra columns (e.g. a lemma) are ignored.

    A malformed line raises :class:`CorpusFormatError` when ``strict``;
    otherwise the whole sentence containing it is skipped and the error is
    passed to ``on_error`` (or logged).
    """
    tokens: list[Token] = []
    bad = False
    pending_end = False

    def flush():
        nonlocal tokens, bad, pending_end
        sent = None if bad or not tokens else TaggedSentence(tuple(tokens))
        tokens, bad, pending_end = [], False, False
        return sent

    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            sent = flush()
            if sent is not None:
                yield sent
            continue
        fields = line.split("\t")
        tok = None
        if len(fields) >= 2 and fields[0].strip() and fields[1].strip():
            try:
                tok = Token(fields[0].strip(), tag_parser(fields[1].strip()))
            except ValueError:
                tok = None
        if tok is None:
            err = CorpusFormatError(lineno, line)
            if strict:
                raise err
            if on_error is not None:
                on_error(err)
            else:
                log.warning("skipping sentence: %s", err)
            if pending_end:
                sent = flush()
                if sent is not None:
                    yield sent
            bad = True
            continue
        if pending_end and not _closes(tok):
            sent = flush()
            if sent is not None:
                yield sent
        tokens.append(tok)
        if _closes(tok):
            pending_end = True
    sent = flush()
    if sent is not None:
        yield sent


@dataclass(frozen=True)
class ParallelRecord:
    source: str
    target: str
    label: GenderClass
    category: Optional[Category] = None
    # set on dev/test re-genderable records whose rewrite deserves a human check
    review: bool = field(default=False, compare=False)

    def __post_init__(self):
        if (self.label is GenderClass.N) != (self.source == self.target):
            raise ValueError(f"label {self.label} inconsistent with source/target: {self.source!r} / {self.target!r}")

    def to_tsv(self, prefix_label: bool = False) -> str:
        src = f"{self.label.value} {self.source}" if prefix_label else self.source
        return f"{src}\t{self.target}\t{self.label.value}"


def parse_parallel_line(line: str, lineno: int = 0, prefix_label: bool = False) -> ParallelRecord:
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) < 3 or fields[2] not in ("G", "N"):
        raise CorpusFormatError(lineno, line)
    src = fields[0]
    if prefix_label and src[:2] in ("G ", "N "):
        src = src[2:]
    return ParallelRecord(src, fields[1], GenderClass(fields[2]))


def read_parallel_tsv(stream: Iterable[str], prefix_label: bool = False) -> Iterator[ParallelRecord]:
    for lineno, line in enumerate(stream, 1):
        if line.strip():
            yield parse_parallel_line(line, lineno, prefix_label)


def process_sentence(
    s: TaggedSentence, ps: PatternSet, lex: ExceptionLexicon = DEFAULT_LEXICON
) -> tuple[MatchResult, RewriteOutcome]:
    m = classify_sentence(s, ps, lex.neutral_demonstratives)
    return m, rewrite_sentence(s, m, lex)


def generate_parallel(
    corpus: Iterable[TaggedSentence], ps: PatternSet, lex: ExceptionLexicon = DEFAULT_LEXICON
) -> Iterator[ParallelRecord]:
    """Yield both rewrite directions for re-genderable sentences, identity pairs for neutral ones."""
    for s in corpus:
        m, out = process_sentence(s, ps, lex)
        if m.outcome is Outcome.UNMATCHED:
            continue
        src = s.text()
        if m.outcome is Outcome.REGENDERABLE and not out.identity:
            tgt = out.variant.text()
            yield ParallelRecord(src, tgt, GenderClass.G, m.category)
            yield ParallelRecord(tgt, src, GenderClass.G, m.category)
        else:
            yield ParallelRecord(src, src, GenderClass.N, m.category)


@dataclass(frozen=True)
class SplitSpec:
    dev_count: int = 1000
    test_count: int = 3000
    seed: int = 0

    def __post_init__(self):
        if self.dev_count < 0 or self.test_count < 0:
            raise ValueError("split counts must be non-negative")


class SplitError(ValueError):
    pass


def _group_key(r: ParallelRecord):
    if r.label is GenderClass.G:
        a, b = sorted((r.source, r.target))
        return ("G", a, b)
    return ("N", r.source)


def split_corpus(records: Iterable[ParallelRecord], spec: SplitSpec):
    """Shuffle and split into ``(train, dev, test)`` lists.

    Records sharing a sentence pair (both directions of a G pair, repeated
    sentences) always land in the same split.  Groups are visited in seeded
    random order and assigned to dev, then test, while they fit; the rest go
    to train.  Dev/test G records come back flagged for review.
    """
    groups: dict = {}
    total = 0
    for r in records:
        groups.setdefault(_group_key(r), []).append(r)
        total += 1
    if spec.dev_count + spec.test_count > total:
        raise SplitError(f"dev {spec.dev_count} + test {spec.test_count} exceeds corpus size {total}")

    order = list(groups.values())
    random.Random(spec.seed).shuffle(order)
    train, dev, test = [], [], []
    for grp in order:
        if len(grp) <= spec.dev_count - len(dev):
            dev.extend(replace(r, review=r.label is GenderClass.G) for r in grp)
        elif len(grp) <= spec.test_count - len(test):
            test.extend(replace(r, review=r.label is GenderClass.G) for r in grp)
        else:
            train.extend(grp)
    if len(dev) != spec.dev_count or len(test) != spec.test_count:
        raise SplitError(
            f"cannot fill dev={spec.dev_count}/test={spec.test_count} exactly without breaking "
            f"sentence pairs (got {len(dev)}/{len(test)}); add neutral records or adjust counts"
        )
    return train, dev, test
