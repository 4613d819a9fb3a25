"""Emotion-tag sentiment scoring, with an optional metaphor adjustment.

Scores are kept as whole numbers of half units so that every sum is exact:
a tag with one sign is worth half a point, two signs one point, three signs
one and a half. A positive metaphor annotation adds two points and a
negative one removes two.
"""

from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

from .corpus import CandidatePolicy, MetaphorPolarity, tag_review
from .errors import IdMismatch, MetasentError, NotEmotionTag, ReviewError
from .tagset import Polarity, Sign, is_emotion_tag

METAPHOR_HALF_UNITS = 4
GOLD_HALF_UNITS = 2


class Tool(Enum):
    SEMANTIC_ONLY = "semantic"
    WITH_METAPHOR = "metaphor"


class MetaphorNeutralPolicy(Enum):
    """How a neutral or missing metaphor label affects the review score.

    ``ZERO_CONTRIBUTION`` adds nothing. ``ZERO_TOTAL`` treats the label as
    resetting the running score to zero before later annotations apply.
    """

    ZERO_CONTRIBUTION = "zero-contribution"
    ZERO_TOTAL = "zero-total"


@total_ordering
@dataclass(frozen=True)
class SentimentScore:
    half_units: int = 0

    def __add__(self, other):
        return SentimentScore(self.half_units + other.half_units)

    def __sub__(self, other):
        return SentimentScore(self.half_units - other.half_units)

    def __neg__(self):
        return SentimentScore(-self.half_units)

    def __lt__(self, other):
        return self.half_units < other.half_units

    @property
    def value(self):
        return self.half_units / 2

    def __str__(self):
        whole, half = divmod(abs(self.half_units), 2)
        sign = "-" if self.half_units < 0 else ""
        return f"{sign}{whole}.{5 if half else 0}"

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``; accepts only multiples of 0.5."""
        doubled = float(text) * 2
        if doubled != int(doubled):
            raise ValueError(f"not a half-unit score: {text!r}")
        return cls(int(doubled))


ZERO = SentimentScore(0)


@dataclass(frozen=True)
class ClassificationResult:
    review_id: str
    base_score: SentimentScore
    metaphor_contribution: SentimentScore
    final_score: SentimentScore
    predicted: Polarity
    counted_tags: tuple = ()


def tag_score(tag):
    if not is_emotion_tag(tag):
        raise NotEmotionTag(f"not an emotion tag: {tag.raw!r}")
    if tag.sign is Sign.PLUS:
        return SentimentScore(tag.intensity)
    if tag.sign is Sign.MINUS:
        return SentimentScore(-tag.intensity)
    return ZERO


def score_tags(tags):
    """Sum emotion-tag weights over a tag stream.

    Unsigned emotion tags and tags from other fields are skipped and are not
    listed among the contributing tags.
    """
    total = 0
    counted = []
    for tag in tags:
        if is_emotion_tag(tag) and tag.sign is not Sign.NONE:
            total += tag_score(tag).half_units
            counted.append(tag)
    return SentimentScore(total), counted


def score_review(tagged):
    return score_tags(tagged.tags())


def classify(score):
    if score.half_units > 0:
        return Polarity.POSITIVE
    if score.half_units < 0:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


def metaphor_contribution(annotation):
    """Score addend for one metaphor annotation (or a bare metaphor polarity)."""
    polarity = getattr(annotation, "gold_polarity", annotation)
    if polarity is MetaphorPolarity.POSITIVE:
        return SentimentScore(METAPHOR_HALF_UNITS)
    if polarity is MetaphorPolarity.NEGATIVE:
        return SentimentScore(-METAPHOR_HALF_UNITS)
    return ZERO


def apply_metaphors(base, metaphors, policy=MetaphorNeutralPolicy.ZERO_CONTRIBUTION):
    score = base
    for annotation in metaphors:
        if (
            policy is MetaphorNeutralPolicy.ZERO_TOTAL
            and annotation.gold_polarity in (MetaphorPolarity.NEUTRAL, MetaphorPolarity.NULL)
        ):
            score = ZERO
        else:
            score = score + metaphor_contribution(annotation)
    return score


def classify_semantic(tagged):
    """Tool 1: emotion tags only."""
    base, counted = score_review(tagged)
    return ClassificationResult(tagged.review_id, base, ZERO, base, classify(base), tuple(counted))


def classify_with_metaphor(tagged, review, policy=MetaphorNeutralPolicy.ZERO_CONTRIBUTION):
    """Tool 2: emotion tags plus the review's gold metaphor annotations."""
    if tagged.review_id != review.id:
        raise IdMismatch(f"tagged review {tagged.review_id!r} paired with review {review.id!r}")
    base, counted = score_review(tagged)
    final = apply_metaphors(base, review.metaphors, policy)
    return ClassificationResult(
        review.id, base, final - base, final, classify(final), tuple(counted)
    )


def gold_to_score(polarity):
    if polarity is Polarity.POSITIVE:
        return SentimentScore(GOLD_HALF_UNITS)
    if polarity is Polarity.NEGATIVE:
        return SentimentScore(-GOLD_HALF_UNITS)
    return ZERO


def classify_review(
    review,
    tool=Tool.SEMANTIC_ONLY,
    candidate_policy=CandidatePolicy.FIRST_TAG,
    neutral_policy=MetaphorNeutralPolicy.ZERO_CONTRIBUTION,
    format_override=None,
    warnings=None,
):
    try:
        tagged = tag_review(review, candidate_policy, format_override, warnings)
    except MetasentError as exc:
        raise ReviewError(review.id, exc) from exc
    if tool is Tool.WITH_METAPHOR:
        return classify_with_metaphor(tagged, review, neutral_policy)
    return classify_semantic(tagged)


def classify_corpus(reviews, tool=Tool.SEMANTIC_ONLY, **options):
    """Classify every review, in corpus order."""
    return [classify_review(r, tool, **options) for r in reviews]
