"""Token, tag and sentence model shared by the rest of the package."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union


class PosTag(str, Enum):
    """Closed set of tags that take part in template matching."""

    PPC = "PPC"  # clitic pronoun
    DM = "DM"  # demonstrative pronoun
    Vadj = "Vadj"  # past participle
    ADJ = "ADJ"
    VCL = "VCL"  # verb with attached clitic
    Vfin = "Vfin"
    VHfin = "VHfin"
    VMfin = "VMfin"
    Vinf = "Vinf"
    ADV = "ADV"
    NEG = "NEG"
    NC = "NC"
    ART = "ART"
    CC = "CC"
    CQUE = "CQUE"
    SE = "SE"
    INT = "INT"
    PPX = "PPX"
    CM = "CM"
    FS = "FS"

    @property
    def canonical_name(self) -> str:
        return self.value

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OtherTag:
    """Any tag outside :class:`PosTag`; kept verbatim, never matches a template."""

    label: str

    @property
    def canonical_name(self) -> str:
        return self.label

    def __str__(self) -> str:
        return self.label


Tag = Union[PosTag, OtherTag]

_KNOWN = {t.value: t for t in PosTag}


def parse_tag(raw: str) -> Tag:
    # total: unknown labels become OtherTag, lookup is case-sensitive
    return _KNOWN.get(raw) or OtherTag(raw)


# Fine-grained TreeTagger Spanish tags folded onto the template inventory.
# VHfin and VMfin stay distinct because the templates name them.
_TREETAGGER_COARSE = {
    "VLfin": "Vfin",
    "VEfin": "Vfin",
    "VSfin": "Vfin",
    "VLadj": "Vadj",
    "VEadj": "Vadj",
    "VSadj": "Vadj",
    "VMadj": "Vadj",
    "VLinf": "Vinf",
    "VEinf": "Vinf",
    "VSinf": "Vinf",
    "VHinf": "Vinf",
    "VMinf": "Vinf",
    "VCLIinf": "VCL",
    "VCLIger": "VCL",
    "VCLIfin": "VCL",
    "CCAD": "CC",
    "CCNEG": "CC",
}


def parse_treetagger_tag(raw: str) -> Tag:
    """Like :func:`parse_tag`, but first folds TreeTagger's fine verb classes."""
    return parse_tag(_TREETAGGER_COARSE.get(raw, raw))


@dataclass(frozen=True)
class Token:
    surface: str
    tag: Tag

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"invalid token surface: {self.surface!r}")


@dataclass(frozen=True)
class TaggedSentence:
    tokens: tuple[Token, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Union[str, Tag]]]) -> "TaggedSentence":
        toks = []
        for surface, tag in pairs:
            if isinstance(tag, str) and not isinstance(tag, PosTag):
                tag = parse_tag(tag)
            toks.append(Token(surface, tag))
        return cls(tuple(toks))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)


def tag_sequence(s: TaggedSentence) -> list[Tag]:
    return [t.tag for t in s.tokens]


class GenderClass(str, Enum):
    G = "G"  # re-genderable
    N = "N"  # neutral

    def __str__(self) -> str:
        return self.value


class Category(Enum):
    CLITIC_PRONOUN = "CLITIC"
    DEMONSTRATIVE = "DEM"
    PAST_PARTICIPLE = "PARTICIPLE"
    ADJECTIVE = "ADJECTIVE"
    CLITIC_ON_VERB = "CLITIC_VERB"

    def __str__(self) -> str:
        return self.value


# Tag of the words a category rewrites.
TARGET_TAG = {
    Category.CLITIC_PRONOUN: PosTag.PPC,
    Category.DEMONSTRATIVE: PosTag.DM,
    Category.PAST_PARTICIPLE: PosTag.Vadj,
    Category.ADJECTIVE: PosTag.ADJ,
    Category.CLITIC_ON_VERB: PosTag.VCL,
}
