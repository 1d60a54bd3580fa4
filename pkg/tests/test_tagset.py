import pytest
from hypothesis import given
from hypothesis import strategies as st

from regender.tagset import (
    GenderClass,
    OtherTag,
    PosTag,
    TaggedSentence,
    Token,
    parse_tag,
    parse_treetagger_tag,
    tag_sequence,
)
from conftest import sent


@pytest.mark.parametrize(
    "raw, expected",
    [("PPC", PosTag.PPC), ("Vadj", PosTag.Vadj), ("FS", PosTag.FS), ("XYZ", OtherTag("XYZ"))],
)
def test_parse_tag(raw, expected):
    assert parse_tag(raw) == expected


def test_parse_tag_is_case_sensitive():
    assert parse_tag("ppc") == OtherTag("ppc")
    assert parse_tag("VADJ") == OtherTag("VADJ")


def test_round_trip_known_tags():
    for t in PosTag:
        assert parse_tag(t.canonical_name) is t


@given(st.text(min_size=1).filter(lambda s: s.strip() == s))
def test_parse_tag_total(raw):
    tag = parse_tag(raw)
    assert tag.canonical_name == raw


def test_treetagger_folding():
    assert parse_treetagger_tag("VLfin") is PosTag.Vfin
    assert parse_treetagger_tag("VSadj") is PosTag.Vadj
    assert parse_treetagger_tag("VCLIinf") is PosTag.VCL
    assert parse_treetagger_tag("VHfin") is PosTag.VHfin
    assert parse_treetagger_tag("PREP") == OtherTag("PREP")


def test_tag_sequence_examples():
    assert tag_sequence(sent("Lo/PPC veo/Vfin ./FS")) == [PosTag.PPC, PosTag.Vfin, PosTag.FS]
    assert tag_sequence(TaggedSentence()) == []
    assert tag_sequence(sent("esto/DM es/Vfin perfecto/ADJ ./FS")) == [PosTag.DM, PosTag.Vfin, PosTag.ADJ, PosTag.FS]


@given(st.lists(st.tuples(st.text("abcñáé", min_size=1), st.sampled_from([t.value for t in PosTag] + ["X"]))))
def test_tag_sequence_length(pairs):
    s = TaggedSentence.from_pairs(pairs)
    assert len(tag_sequence(s)) == len(s.tokens)


def test_token_keeps_surface():
    assert Token("Mándamelo", PosTag.VCL).surface == "Mándamelo"
    with pytest.raises(ValueError):
        Token("dos palabras", PosTag.NC)
    with pytest.raises(ValueError):
        Token("", PosTag.NC)


def test_gender_class_serialisation():
    assert [str(g) for g in GenderClass] == ["G", "N"]
