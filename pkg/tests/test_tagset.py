import pytest
from hypothesis import given
from hypothesis import strategies as st

from metasent.errors import (
    BadLeadingChar,
    EmptyTag,
    ExcessIntensity,
    InvalidTagCharacter,
    MixedSigns,
    TagError,
)
from metasent.tagset import (
    Polarity,
    SemanticTag,
    Sign,
    is_emotion_tag,
    make_tag,
    parse_tag,
    tag_polarity,
)


@pytest.mark.parametrize(
    "raw, field, code, sign, intensity",
    [
        ("E4.1+", "E", "4.1", Sign.PLUS, 1),
        ("Z5", "Z", "5", Sign.NONE, 0),
        ("E2---", "E", "2", Sign.MINUS, 3),
        ("E", "E", "", Sign.NONE, 0),
        ("E+", "E", "", Sign.PLUS, 1),
        ("S1.2.4%", "S", "1.2.4%", Sign.NONE, 0),
        ("A5.1+++", "A", "5.1", Sign.PLUS, 3),
        ("O4.2f-", "O", "4.2f", Sign.MINUS, 1),
    ],
)
def test_parse_tag(raw, field, code, sign, intensity):
    tag = parse_tag(raw)
    assert (tag.raw, tag.field_letter, tag.category_code, tag.sign, tag.intensity) == (
        raw, field, code, sign, intensity,
    )


@pytest.mark.parametrize(
    "raw, error",
    [
        ("", EmptyTag),
        ("e4.1+", BadLeadingChar),
        ("4.1+", BadLeadingChar),
        ("+E", BadLeadingChar),
        ("E1+-", MixedSigns),
        ("E1-+-", MixedSigns),
        ("E2++++", ExcessIntensity),
        ("E1/E2", InvalidTagCharacter),
        ("E1 +", InvalidTagCharacter),
    ],
)
def test_parse_tag_errors(raw, error):
    with pytest.raises(error):
        parse_tag(raw)


def test_tag_errors_are_value_errors():
    with pytest.raises(ValueError):
        parse_tag("E1+-")


@pytest.mark.parametrize(
    "tag, expected",
    [
        (make_tag("E", "1", Sign.PLUS, 1), True),
        (make_tag("Z", "5"), False),
        (make_tag("E"), True),
    ],
)
def test_is_emotion_tag(tag, expected):
    assert is_emotion_tag(tag) is expected


@pytest.mark.parametrize(
    "tag, polarity",
    [
        (make_tag("E", "4.1", Sign.PLUS, 2), Polarity.POSITIVE),
        (make_tag("E", "1"), Polarity.NEUTRAL),
        (make_tag("E", "2", Sign.MINUS, 3), Polarity.NEGATIVE),
    ],
)
def test_tag_polarity(tag, polarity):
    assert tag_polarity(tag) is polarity


def test_invariants_enforced_on_construction():
    with pytest.raises(ValueError):
        SemanticTag("E1", "E", "1", Sign.NONE, 2)
    with pytest.raises(ValueError):
        SemanticTag("E1+", "E", "1", Sign.PLUS, 0)
    with pytest.raises(ValueError):
        SemanticTag("E1++++", "E", "1", Sign.PLUS, 4)


codes = st.from_regex(r"[0-9]{0,2}(\.[0-9]{1,2}){0,2}[a-z%@]{0,2}", fullmatch=True)
letters = st.sampled_from("ABCEFGHIKLMNOPQSTWXYZ")
signs = st.sampled_from([("", 0), ("+", 1), ("++", 2), ("+++", 3), ("-", 1), ("--", 2), ("---", 3)])


@given(letters, codes, signs)
def test_round_trip(letter, code, suffix):
    raw = letter + code + suffix[0]
    tag = parse_tag(raw)
    assert tag.rebuild() == raw
    assert tag.intensity == suffix[1]
    assert (tag.sign is Sign.NONE) == (tag.intensity == 0)


@given(st.text())
def test_parse_is_total(raw):
    try:
        tag = parse_tag(raw)
    except TagError:
        return
    assert tag.rebuild() == raw
    assert (tag.sign is Sign.NONE) == (tag.intensity == 0)
    assert 0 <= tag.intensity <= 3


@given(letters, codes, signs)
def test_flip_swaps_polarity(letter, code, suffix):
    tag = parse_tag(letter + code + suffix[0])
    flipped = tag.flipped()
    assert flipped.intensity == tag.intensity
    swap = {Polarity.POSITIVE: Polarity.NEGATIVE, Polarity.NEGATIVE: Polarity.POSITIVE,
            Polarity.NEUTRAL: Polarity.NEUTRAL}
    assert tag_polarity(flipped) is swap[tag_polarity(tag)]
