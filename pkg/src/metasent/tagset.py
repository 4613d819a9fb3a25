"""Semantic tag model for USAS/AraSAS-style tagger output.

A tag is a field letter, an opaque category code and an optional run of one
to three identical sign characters::

    E4.1+   -> field E, code "4.1", Plus, intensity 1
    E2---   -> field E, code "2",   Minus, intensity 3
    Z5      -> field Z, code "5",   no sign
"""

from dataclasses import dataclass
from enum import Enum

from .errors import (
    BadLeadingChar,
    EmptyTag,
    ExcessIntensity,
    InvalidTagCharacter,
    MixedSigns,
)

MAX_INTENSITY = 3
EMOTION_FIELD = "E"
CANDIDATE_SEPARATOR = "/"


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"
    NONE = ""


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"

    def __str__(self):
        return self.value


#: Row/column order used everywhere a polarity indexes something.
POLARITIES = (Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL)


@dataclass(frozen=True)
class SemanticTag:
    raw: str
    field_letter: str
    category_code: str
    sign: Sign
    intensity: int

    def __post_init__(self):
        if (self.sign is Sign.NONE) != (self.intensity == 0):
            raise ValueError(f"sign {self.sign} inconsistent with intensity {self.intensity}")
        if not 0 <= self.intensity <= MAX_INTENSITY:
            raise ValueError(f"intensity out of range: {self.intensity}")

    def __str__(self):
        return self.raw

    def rebuild(self):
        """Reassemble the tag text from its parts."""
        return self.field_letter + self.category_code + self.sign.value * self.intensity

    def flipped(self):
        """The same tag with Plus and Minus exchanged."""
        if self.sign is Sign.NONE:
            return self
        sign = Sign.MINUS if self.sign is Sign.PLUS else Sign.PLUS
        return make_tag(self.field_letter, self.category_code, sign, self.intensity)


def make_tag(field_letter, category_code="", sign=Sign.NONE, intensity=0):
    raw = field_letter + category_code + sign.value * intensity
    return SemanticTag(raw, field_letter, category_code, sign, intensity)


def parse_tag(raw: str) -> SemanticTag:
    if not raw:
        raise EmptyTag(raw)
    head = raw[0]
    if not ("A" <= head <= "Z"):
        raise BadLeadingChar(raw)
    if CANDIDATE_SEPARATOR in raw or any(ch.isspace() for ch in raw):
        raise InvalidTagCharacter(raw)

    body = raw[1:]
    stripped = body.rstrip("+-")
    suffix = body[len(stripped):]
    if not suffix:
        return SemanticTag(raw, head, body, Sign.NONE, 0)
    if len(set(suffix)) > 1:
        raise MixedSigns(raw)
    if len(suffix) > MAX_INTENSITY:
        raise ExcessIntensity(raw)
    return SemanticTag(raw, head, stripped, Sign(suffix[0]), len(suffix))


def is_emotion_tag(tag: SemanticTag) -> bool:
    return tag.field_letter == EMOTION_FIELD


def tag_polarity(tag: SemanticTag) -> Polarity:
    if tag.sign is Sign.PLUS:
        return Polarity.POSITIVE
    if tag.sign is Sign.MINUS:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL
