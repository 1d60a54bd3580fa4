"""Rewriter error rates and classifier precision/recall."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .tagset import GenderClass

ALIGNMENT_NOTE = "length-mismatched pairs are scored by token-level edit distance"


def _edit_distance(a: Sequence[str], b: Sequence[str]) -> int:
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def word_error_count(hypothesis: str, reference: str) -> int:
    """Incorrectly converted words in ``hypothesis``.

    Same token count: positionwise mismatches.  Otherwise: substitutions,
    insertions and deletions of the cheapest token alignment.
    """
    h, r = hypothesis.split(), reference.split()
    if len(h) == len(r):
        return sum(x != y for x, y in zip(h, r))
    return _edit_distance(h, r)


@dataclass(frozen=True)
class ErrorCounts:
    incorrect_words: int = 0
    sentences: int = 0
    words: int = 0

    @property
    def per_sentence_pct(self) -> float:
        return 100.0 * self.incorrect_words / self.sentences if self.sentences else 0.0

    @property
    def per_word_pct(self) -> float:
        return 100.0 * self.incorrect_words / self.words if self.words else 0.0

    def __add__(self, other: "ErrorCounts") -> "ErrorCounts":
        return ErrorCounts(
            self.incorrect_words + other.incorrect_words,
            self.sentences + other.sentences,
            self.words + other.words,
        )


ROWS = ("all", "neutral", "regenderable")


@dataclass(frozen=True)
class ErrorReport:
    breakdown: dict  # row name -> ErrorCounts

    @property
    def totals(self) -> ErrorCounts:
        return self.breakdown["all"]

    @property
    def incorrect_words(self) -> int:
        return self.totals.incorrect_words

    @property
    def sentences(self) -> int:
        return self.totals.sentences

    @property
    def words(self) -> int:
        return self.totals.words

    @property
    def per_sentence_pct(self) -> float:
        return self.totals.per_sentence_pct

    @property
    def per_word_pct(self) -> float:
        return self.totals.per_word_pct

    def to_table(self) -> str:
        lines = [
            f"{'type':<14}{'sentences':>10}{'words':>8}{'errors':>8}{'%/sent':>9}{'%/word':>9}",
        ]
        for name in ROWS:
            c = self.breakdown[name]
            lines.append(
                f"{name:<14}{c.sentences:>10}{c.words:>8}{c.incorrect_words:>8}"
                f"{c.per_sentence_pct:>9.1f}{c.per_word_pct:>9.2f}"
            )
        lines.append(f"note: {ALIGNMENT_NOTE}")
        return "\n".join(lines)

    def to_kv(self) -> str:
        out = []
        for name in ROWS:
            c = self.breakdown[name]
            out += [
                f"{name}.sentences={c.sentences}",
                f"{name}.words={c.words}",
                f"{name}.incorrect_words={c.incorrect_words}",
                f"{name}.per_sentence_pct={c.per_sentence_pct!r}",
                f"{name}.per_word_pct={c.per_word_pct!r}",
            ]
        return "\n".join(out)


def corpus_error_report(triples: Iterable[tuple[str, str, GenderClass]]) -> ErrorReport:
    parts = {GenderClass.N: ErrorCounts(), GenderClass.G: ErrorCounts()}
    for hyp, ref, label in triples:
        label = GenderClass(label)
        parts[label] = parts[label] + ErrorCounts(word_error_count(hyp, ref), 1, len(ref.split()))
    if parts[GenderClass.N].sentences + parts[GenderClass.G].sentences == 0:
        raise ValueError("error report needs at least one sentence")
    return ErrorReport(
        {
            "all": parts[GenderClass.N] + parts[GenderClass.G],
            "neutral": parts[GenderClass.N],
            "regenderable": parts[GenderClass.G],
        }
    )


@dataclass(frozen=True)
class ClassStats:
    precision: float
    recall: float
    support: int
    predicted: int
    # True when the class was never predicted and precision is reported as 0
    precision_undefined: bool = False


@dataclass(frozen=True)
class ClassReport:
    accuracy: float
    per_class: dict  # GenderClass -> ClassStats
    total: int

    def to_table(self) -> str:
        lines = [f"accuracy {100 * self.accuracy:.1f}% ({self.total} sentences)", f"{'class':<7}{'recall':>8}{'prec.':>8}{'support':>9}"]
        for lbl in (GenderClass.G, GenderClass.N):
            st = self.per_class[lbl]
            prec = f"{100 * st.precision:.1f}%" + ("*" if st.precision_undefined else "")
            lines.append(f"{lbl.value:<7}{100 * st.recall:>7.1f}%{prec:>8}{st.support:>9}")
        if any(st.precision_undefined for st in self.per_class.values()):
            lines.append("* class never predicted; precision reported as 0")
        return "\n".join(lines)

    def to_kv(self) -> str:
        out = [f"accuracy={self.accuracy!r}", f"total={self.total}"]
        for lbl in (GenderClass.G, GenderClass.N):
            st = self.per_class[lbl]
            out += [
                f"{lbl.value}.precision={st.precision!r}",
                f"{lbl.value}.recall={st.recall!r}",
                f"{lbl.value}.support={st.support}",
                f"{lbl.value}.precision_undefined={int(st.precision_undefined)}",
            ]
        return "\n".join(out)


def classifier_report(predictions: Sequence[GenderClass], gold: Sequence[GenderClass]) -> ClassReport:
    if len(predictions) != len(gold):
        raise ValueError(f"{len(predictions)} predictions for {len(gold)} gold labels")
    if not gold:
        raise ValueError("classifier report needs at least one example")
    preds = [GenderClass(p) for p in predictions]
    gold = [GenderClass(g) for g in gold]
    n = len(gold)
    per_class = {}
    for lbl in (GenderClass.G, GenderClass.N):
        tp = sum(p is lbl and g is lbl for p, g in zip(preds, gold))
        n_pred = sum(p is lbl for p in preds)
        support = sum(g is lbl for g in gold)
        per_class[lbl] = ClassStats(
            precision=tp / n_pred if n_pred else 0.0,
            recall=tp / support if support else 0.0,
            support=support,
            predicted=n_pred,
            precision_undefined=n_pred == 0,
        )
    mismatches = sum(p is not g for p, g in zip(preds, gold))
    return ClassReport(1.0 - mismatches / n, per_class, n)
