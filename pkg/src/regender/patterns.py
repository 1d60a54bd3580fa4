"""POS-sequence templates and the sentence-level re-genderability decision.

A sentence is matched against templates on its *whole* tag sequence.  G
templates win over N templates; a verb carrying a gendered clitic makes a
sentence re-genderable regardless of the templates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Optional

from .tagset import (
    TARGET_TAG,
    Category,
    GenderClass,
    OtherTag,
    PosTag,
    TaggedSentence,
    parse_tag,
)

log = logging.getLogger(__name__)

CLITIC_SUFFIXES = ("lo", "la", "los", "las")
NEUTRAL_DEMONSTRATIVES = frozenset({"esto", "eso", "aquello"})

_CATEGORY_NAMES = {c.value: c for c in Category}


class PatternFileError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Pattern:
    tags: tuple[PosTag, ...]
    polarity: GenderClass
    category: Category
    lineno: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.tags:
            raise ValueError("pattern must have at least one tag")

    def __str__(self) -> str:
        return f"{self.polarity} {self.category} {'-'.join(t.value for t in self.tags)}"


@dataclass(frozen=True)
class LoadWarning:
    lineno: int
    message: str


@dataclass(frozen=True)
class PatternSet:
    g_patterns: tuple[Pattern, ...] = ()
    n_patterns: tuple[Pattern, ...] = ()
    warnings: tuple[LoadWarning, ...] = field(default=(), compare=False)
    # rows per (polarity, category) as read, before deduplication
    raw_counts: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_g_index", {p.tags: p for p in self.g_patterns})
        object.__setattr__(self, "_n_index", {p.tags: p for p in self.n_patterns})

    def __len__(self) -> int:
        return len(self.g_patterns) + len(self.n_patterns)

    def lookup(self, tags: tuple) -> Optional[Pattern]:
        """Return the pattern whose tag list equals ``tags`` exactly, G first."""
        return self._g_index.get(tags) or self._n_index.get(tags)


def _parse_line(lineno: int, line: str) -> Pattern:
    parts = line.split()
    if len(parts) != 3:
        raise PatternFileError(lineno, line, "expected '<G|N> <CATEGORY> <TAG-TAG-...>'")
    pol, cat, seq = parts
    if pol not in ("G", "N"):
        raise PatternFileError(lineno, line, f"bad polarity {pol!r}")
    if cat not in _CATEGORY_NAMES:
        raise PatternFileError(lineno, line, f"unknown category {cat!r}")
    tags = []
    for raw in seq.split("-"):
        if not raw:
            raise PatternFileError(lineno, line, "empty tag")
        tag = parse_tag(raw)
        if isinstance(tag, OtherTag):
            raise PatternFileError(lineno, line, f"tag {raw!r} cannot appear in a template")
        tags.append(tag)
    return Pattern(tuple(tags), GenderClass(pol), _CATEGORY_NAMES[cat], lineno)


def load_patterns(text: str, log_level: int = logging.WARNING) -> PatternSet:
    """Parse pattern-file text into a deduplicated :class:`PatternSet`.

    Dropped rows are reported both on the module logger and in
    ``PatternSet.warnings``:

    * exact repeats of an earlier row;
    * a G row whose tags were already claimed by a G row of another
      category (first declaration wins);
    * an N row whose tags also appear as a G row (G wins).

    G rows that contain no tag of their category's target class are kept but
    flagged, since they can never yield a rewrite position.
    """
    rows: list[Pattern] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(_parse_line(lineno, line))

    warnings: list[LoadWarning] = []
    raw_counts: dict = {}
    for p in rows:
        key = (p.polarity, p.category)
        raw_counts[key] = raw_counts.get(key, 0) + 1

    g: dict[tuple, Pattern] = {}
    for p in rows:
        if p.polarity is not GenderClass.G:
            continue
        prev = g.get(p.tags)
        if prev is None:
            g[p.tags] = p
            if TARGET_TAG[p.category] not in p.tags:
                warnings.append(LoadWarning(p.lineno, f"{p} has no {TARGET_TAG[p.category].value} tag"))
        elif prev.category is p.category:
            warnings.append(LoadWarning(p.lineno, f"duplicate of line {prev.lineno}: {p}"))
        else:
            warnings.append(
                LoadWarning(p.lineno, f"{p} conflicts with line {prev.lineno} ({prev.category}); keeping the first")
            )

    n: dict[tuple, Pattern] = {}
    for p in rows:
        if p.polarity is not GenderClass.N:
            continue
        if p.tags in g:
            warnings.append(
                LoadWarning(p.lineno, f"{p} is also re-genderable (line {g[p.tags].lineno}); dropped")
            )
        elif p.tags in n:
            warnings.append(LoadWarning(p.lineno, f"duplicate of line {n[p.tags].lineno}: {p}"))
        else:
            n[p.tags] = p

    for w in warnings:
        log.log(log_level, "patterns: line %d: %s", w.lineno, w.message)
    return PatternSet(tuple(g.values()), tuple(n.values()), tuple(warnings), raw_counts)


def default_pattern_text() -> str:
    return resources.files("regender").joinpath("data/default_patterns.txt").read_text(encoding="utf-8")


_default: Optional[PatternSet] = None


def default_patterns() -> PatternSet:
    global _default
    if _default is None:
        # the shipped table has known duplicates; keep them out of user logs
        _default = load_patterns(default_pattern_text(), log_level=logging.DEBUG)
    return _default


class Outcome(Enum):
    REGENDERABLE = "G"
    NEUTRAL = "N"
    UNMATCHED = "U"


@dataclass(frozen=True)
class MatchResult:
    outcome: Outcome
    category: Optional[Category] = None
    positions: tuple[int, ...] = ()
    pattern: Optional[Pattern] = field(default=None, compare=False)

    @classmethod
    def regenderable(cls, category: Category, positions, pattern=None) -> "MatchResult":
        positions = tuple(positions)
        if not positions or list(positions) != sorted(set(positions)):
            raise ValueError(f"positions must be non-empty and strictly increasing: {positions}")
        return cls(Outcome.REGENDERABLE, category, positions, pattern)

    @property
    def is_regenderable(self) -> bool:
        return self.outcome is Outcome.REGENDERABLE


NEUTRAL = MatchResult(Outcome.NEUTRAL)
UNMATCHED = MatchResult(Outcome.UNMATCHED)


def _has_attached_clitic(surface: str) -> bool:
    return surface.lower().endswith(CLITIC_SUFFIXES)


def clitic_verb_positions(s: TaggedSentence) -> list[int]:
    """Indices of VCL tokens, plus infinitives that end in a gendered clitic."""
    out = []
    for i, tok in enumerate(s.tokens):
        if tok.tag is PosTag.VCL or (tok.tag is PosTag.Vinf and _has_attached_clitic(tok.surface)):
            out.append(i)
    return out


def _neutral_demonstrative_subject(s: TaggedSentence, neutral_demonstratives) -> bool:
    seen = False
    for tok in s.tokens:
        if tok.tag is PosTag.DM and tok.surface.lower() in neutral_demonstratives:
            seen = True
        elif seen and tok.tag in (PosTag.ADJ, PosTag.Vadj):
            return True
    return False


def classify_sentence(
    s: TaggedSentence,
    ps: PatternSet,
    neutral_demonstratives=NEUTRAL_DEMONSTRATIVES,
) -> MatchResult:
    tags = tuple(t.tag for t in s.tokens)
    pat = ps.lookup(tags)
    if pat is not None:
        if pat.polarity is GenderClass.N:
            return MatchResult(Outcome.NEUTRAL, pattern=pat)
        target = TARGET_TAG[pat.category]
        positions = [i for i, t in enumerate(tags) if t is target]
        if positions:
            return MatchResult.regenderable(pat.category, positions, pat)
        # a template without any target word has nothing to rewrite
        return MatchResult(Outcome.NEUTRAL, pattern=pat)

    positions = clitic_verb_positions(s)
    if positions:
        return MatchResult.regenderable(Category.CLITIC_ON_VERB, positions)

    # an adjective after esto/eso/aquello agrees with that pronoun
    if _neutral_demonstrative_subject(s, neutral_demonstratives):
        return NEUTRAL
    return UNMATCHED
