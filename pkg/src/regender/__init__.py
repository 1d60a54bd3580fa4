"""Rule-based generation of binary gender alternatives for short Spanish sentences."""

from .corpus import (
    DropReason,
    ParallelRecord,
    SplitSpec,
    filter_segment,
    generate_parallel,
    read_tagged_corpus,
    split_corpus,
)
from .morphology import (
    DEFAULT_LEXICON,
    ExceptionLexicon,
    RewriteOutcome,
    is_gendered_word,
    load_lexicon,
    rewrite_sentence,
    rewrite_word,
)
from .patterns import MatchResult, Outcome, PatternSet, classify_sentence, default_patterns, load_patterns
from .tagset import Category, GenderClass, OtherTag, PosTag, TaggedSentence, Token, parse_tag, tag_sequence

__version__ = "0.1.0"

__all__ = [
    "Category",
    "DEFAULT_LEXICON",
    "DropReason",
    "ExceptionLexicon",
    "GenderClass",
    "MatchResult",
    "OtherTag",
    "Outcome",
    "ParallelRecord",
    "PatternSet",
    "PosTag",
    "RewriteOutcome",
    "SplitSpec",
    "TaggedSentence",
    "Token",
    "classify_sentence",
    "default_patterns",
    "filter_segment",
    "generate_parallel",
    "is_gendered_word",
    "load_lexicon",
    "load_patterns",
    "parse_tag",
    "read_tagged_corpus",
    "rewrite_sentence",
    "rewrite_word",
    "split_corpus",
    "tag_sequence",
]
