"""Word-level gender rewrite rules and their application to matched sentences."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional, Union

from .patterns import MatchResult
from .tagset import Category, TaggedSentence, Token


@dataclass(frozen=True)
class WholeWordSwap:
    category: Category
    source: str
    target: str

    def inverse(self) -> "WholeWordSwap":
        return WholeWordSwap(self.category, self.target, self.source)


@dataclass(frozen=True)
class SuffixRule:
    """Replace a trailing ``suffix`` with ``replacement``."""

    category: Category
    suffix: str
    replacement: str

    def inverse(self) -> "SuffixRule":
        return SuffixRule(self.category, self.replacement, self.suffix)


RewriteRule = Union[WholeWordSwap, SuffixRule]


def _pairs(category, rule_cls, pairs):
    out = []
    for a, b in pairs:
        out.append(rule_cls(category, a, b))
        out.append(rule_cls(category, b, a))
    return out


RULES: tuple[RewriteRule, ...] = tuple(
    _pairs(Category.CLITIC_PRONOUN, WholeWordSwap, [("lo", "la"), ("los", "las")])
    + _pairs(
        Category.DEMONSTRATIVE,
        WholeWordSwap,
        [
            ("este", "esta"),
            ("estos", "estas"),
            ("ese", "esa"),
            ("esos", "esas"),
            ("aquel", "aquella"),
            ("aquellos", "aquellas"),
        ],
    )
    + _pairs(
        Category.PAST_PARTICIPLE,
        SuffixRule,
        [
            ("ados", "adas"),
            ("idos", "idas"),
            ("chos", "chas"),
            ("ado", "ada"),
            ("ido", "ida"),
            ("cho", "cha"),
            # irregular participles: abierto, escrito, puesto, adjunto
            ("tos", "tas"),
            ("to", "ta"),
        ],
    )
    + _pairs(
        Category.ADJECTIVE,
        SuffixRule,
        [("dores", "doras"), ("dor", "dora"), ("os", "as"), ("o", "a")],
    )
    + _pairs(Category.CLITIC_ON_VERB, SuffixRule, [("los", "las"), ("lo", "la")])
)

_SWAPS: dict[Category, dict[str, str]] = {}
_SUFFIXES: dict[Category, list[SuffixRule]] = {}
for _r in RULES:
    if isinstance(_r, WholeWordSwap):
        _SWAPS.setdefault(_r.category, {})[_r.source] = _r.target
    else:
        _SUFFIXES.setdefault(_r.category, []).append(_r)
for _rules in _SUFFIXES.values():
    # longest match first; sort is stable so table order breaks ties
    _rules.sort(key=lambda r: -len(r.suffix))

# every whole-word swap is a closed-class word; open-class suffix rules skip them
_SWAP_WORDS = frozenset(w for table in _SWAPS.values() for w in table)


@dataclass(frozen=True)
class ExceptionLexicon:
    fixed_expressions: frozenset = frozenset({"lo siento", "lo sé"})
    neutral_adjective_suffixes: frozenset = frozenset({"al", "nte", "ble"})
    neutral_clitics: frozenset = frozenset({"le", "les"})
    neutral_demonstratives: frozenset = frozenset({"esto", "eso", "aquello"})

    def is_fixed_expression(self, first: str, second: str) -> bool:
        return f"{first.lower()} {second.lower()}" in self.fixed_expressions

    def merged(self, other: "ExceptionLexicon") -> "ExceptionLexicon":
        return ExceptionLexicon(
            self.fixed_expressions | other.fixed_expressions,
            self.neutral_adjective_suffixes | other.neutral_adjective_suffixes,
            self.neutral_clitics | other.neutral_clitics,
            self.neutral_demonstratives | other.neutral_demonstratives,
        )


class LexiconFileError(ValueError):
    pass


_SECTIONS = ("fixed_expressions", "neutral_adjective_suffixes", "neutral_clitics", "neutral_demonstratives")


def load_lexicon(text: str) -> ExceptionLexicon:
    """Parse a sectioned lexicon file.

    Sections absent from the file are empty, not defaulted; use
    ``DEFAULT_LEXICON.merged(...)`` to extend the defaults instead.
    """
    entries: dict[str, set] = {name: set() for name in _SECTIONS}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in entries:
                raise LexiconFileError(f"line {lineno}: unknown section {line!r}")
            continue
        if section is None:
            raise LexiconFileError(f"line {lineno}: entry outside any section: {line!r}")
        entries[section].add(" ".join(line.lower().split()))
    return ExceptionLexicon(**{k: frozenset(v) for k, v in entries.items()})


def default_lexicon_text() -> str:
    return resources.files("regender").joinpath("data/default_lexicon.txt").read_text(encoding="utf-8")


DEFAULT_LEXICON = ExceptionLexicon()


def _match_case(template: str, word: str) -> str:
    if len(template) > 1 and template.isupper():
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def _replace_suffix(word: str, suffix: str, replacement: str) -> str:
    k = len(suffix)
    stem, tail = word[:-k], word[-k:]
    p = 0
    while p < min(k, len(replacement)) and suffix[p] == replacement[p]:
        p += 1
    kept, ref = tail[:p], tail[p:] or tail[-1:]
    new = "".join(
        ch.upper() if ref[min(j, len(ref) - 1)].isupper() else ch for j, ch in enumerate(replacement[p:])
    )
    return stem + kept + new


def find_rule(word: str, category: Category, lex: ExceptionLexicon = DEFAULT_LEXICON) -> Optional[RewriteRule]:
    """The rule :func:`rewrite_word` would try for ``word``, ignoring the round-trip check."""
    low = word.lower()
    if category is Category.CLITIC_PRONOUN and low in lex.neutral_clitics:
        return None
    swaps = _SWAPS.get(category)
    if swaps is not None:
        return WholeWordSwap(category, low, swaps[low]) if low in swaps else None

    if low in _SWAP_WORDS or low in lex.neutral_clitics or low in lex.neutral_demonstratives:
        return None
    if category is Category.ADJECTIVE and low.endswith(tuple(lex.neutral_adjective_suffixes)):
        return None
    if len(low) != len(word):
        return None  # lowercasing changed length; suffix offsets would drift
    for rule in _SUFFIXES.get(category, ()):
        if len(low) > len(rule.suffix) and low.endswith(rule.suffix):
            return rule
    return None


def _apply(word: str, category: Category, lex: ExceptionLexicon) -> Optional[str]:
    rule = find_rule(word, category, lex)
    if rule is None:
        return None
    if isinstance(rule, WholeWordSwap):
        return _match_case(word, rule.target)
    return _replace_suffix(word, rule.suffix, rule.replacement)


@lru_cache(maxsize=1 << 16)
def rewrite_word(word: str, category: Category, lex: ExceptionLexicon = DEFAULT_LEXICON) -> Optional[str]:
    """Opposite-gender form of ``word`` under ``category``, or None.

    Whole-word swaps are tried before suffix rules, suffix rules longest
    first.  Only the changed suffix characters are touched, so casing and
    accents in the stem survive.  A rewrite whose result would not map back
    to ``word`` (e.g. ``-doro`` -> ``-dora`` -> ``-dor``) is refused.
    """
    if not word:
        raise ValueError("empty word")
    out = _apply(word, category, lex)
    if out is None or _apply(out, category, lex) != word:
        return None
    return out


def is_gendered_word(word: str, lex: ExceptionLexicon = DEFAULT_LEXICON) -> bool:
    return any(rewrite_word(word, c, lex) is not None for c in Category)


@dataclass(frozen=True)
class RewriteOutcome:
    variant: TaggedSentence
    changed_positions: tuple[int, ...] = field(default=())

    @property
    def identity(self) -> bool:
        return not self.changed_positions


def rewrite_sentence(
    s: TaggedSentence, m: MatchResult, lex: ExceptionLexicon = DEFAULT_LEXICON
) -> RewriteOutcome:
    if not m.is_regenderable:
        return RewriteOutcome(s)
    tokens = list(s.tokens)
    changed = []
    for pos in m.positions:
        if not 0 <= pos < len(tokens):
            raise IndexError(f"match position {pos} outside sentence of {len(tokens)} tokens")
        tok = tokens[pos]
        if (
            m.category is Category.CLITIC_PRONOUN
            and pos + 1 < len(tokens)
            and lex.is_fixed_expression(tok.surface, tokens[pos + 1].surface)
        ):
            continue
        new = rewrite_word(tok.surface, m.category, lex)
        if new is not None and new != tok.surface:
            tokens[pos] = Token(new, tok.tag)
            changed.append(pos)
    if not changed:
        return RewriteOutcome(s)
    return RewriteOutcome(TaggedSentence(tuple(tokens)), tuple(changed))
