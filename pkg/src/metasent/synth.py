"""Seeded synthetic corpora shaped like the AMC.

With ``size=1000`` the generator reproduces the published label counts
(702 positive, 171 negative, 127 neutral) and the published length-bin
sizes; the 29 reviews the published bins do not account for get 80-89
tokens. Text is drawn from a small tagged vocabulary so the emotion tags
correlate with, but do not determine, the gold label.
"""

import random

from .corpus import (
    FORMATTERS,
    MetaphorAnnotation,
    MetaphorPolarity,
    Review,
    TaggedFormat,
    TaggedToken,
)
from .tagset import Polarity, parse_tag

# (lower, upper, reviews out of 1000); upper of the first bin is a practical cap
LENGTH_PROFILE = (
    (1000, 1150, 5), (500, 999, 32), (100, 499, 268), (90, 99, 24), (80, 89, 29),
    (70, 79, 30), (60, 69, 31), (50, 59, 57), (40, 49, 53), (30, 39, 70),
    (20, 29, 99), (10, 19, 149), (5, 9, 90), (1, 4, 63),
)
LABEL_PROFILE = ((Polarity.POSITIVE, 702), (Polarity.NEGATIVE, 171), (Polarity.NEUTRAL, 127))

VOCABULARY = {
    Polarity.POSITIVE: [
        ("رائع", "E4.1+"), ("جميل", "E4.1++/O4.2+"), ("ممتع", "E4.1+++"),
        ("أحببت", "E2+"), ("مذهل", "E4.1++"), ("مبهج", "E4.1+/X5.2+"),
    ],
    Polarity.NEGATIVE: [
        ("ممل", "E4.1-/X5.2-"), ("حزين", "E4.1--"), ("سيء", "E4.1---"),
        ("كرهت", "E2-"), ("مخيب", "E4.2-"), ("مزعج", "E3--"),
    ],
    Polarity.NEUTRAL: [
        ("كتاب", "Q4.1"), ("الرواية", "Q4.3"), ("قرأت", "Q3"), ("الكاتب", "S2"),
        ("في", "Z5"), ("من", "Z5"), ("هذا", "Z8"), ("شعور", "E1"), ("صفحة", "Q4.1/N5"),
        ("*", ""),
    ],
}
METAPHORS = {
    MetaphorPolarity.POSITIVE: ["بحر من الجمال", "نور القلب"],
    MetaphorPolarity.NEGATIVE: ["سجن الملل", "جرح عميق"],
    MetaphorPolarity.NEUTRAL: ["باب الحكاية"],
}
_METAPHOR_FOR_GOLD = {
    Polarity.POSITIVE: MetaphorPolarity.POSITIVE,
    Polarity.NEGATIVE: MetaphorPolarity.NEGATIVE,
    Polarity.NEUTRAL: MetaphorPolarity.NEUTRAL,
}


def _apportion(profile, size):
    """Integer counts proportional to the profile weights, summing to ``size``."""
    weights = [w for *_, w in profile]
    total = sum(weights)
    raw = [w * size / total for w in weights]
    counts = [int(x) for x in raw]
    order = sorted(range(len(raw)), key=lambda i: (counts[i] - raw[i], i))
    for i in order[: size - sum(counts)]:
        counts[i] += 1
    return counts


def _token(rng, gold):
    roll = rng.random()
    if roll < 0.12:
        pool = VOCABULARY[gold if gold is not Polarity.NEUTRAL else rng.choice(list(VOCABULARY))]
    elif roll < 0.17:
        pool = VOCABULARY[rng.choice([Polarity.POSITIVE, Polarity.NEGATIVE])]
    else:
        pool = VOCABULARY[Polarity.NEUTRAL]
    surface, tags = rng.choice(pool)
    return TaggedToken(surface, tuple(parse_tag(t) for t in tags.split("/") if t))


def _metaphors(rng, gold, slots):
    out = []
    for k in range(slots):
        if rng.random() < (0.5 if k == 0 else 0.1):
            polarity = _METAPHOR_FOR_GOLD[gold] if rng.random() < 0.7 else rng.choice(list(METAPHORS))
            out.append(MetaphorAnnotation(rng.choice(METAPHORS[polarity]), polarity))
        else:
            out.append(MetaphorAnnotation("", MetaphorPolarity.NULL))
    return tuple(out)


def generate_corpus(size=1000, seed=0, metaphor_slots=2):
    rng = random.Random(seed)
    lengths = []
    for (lo, hi, _), n in zip(LENGTH_PROFILE, _apportion(LENGTH_PROFILE, size)):
        lengths += [rng.randint(lo, hi) for _ in range(n)]
    labels = []
    for (polarity, _), n in zip(LABEL_PROFILE, _apportion(LABEL_PROFILE, size)):
        labels += [polarity] * n
    rng.shuffle(lengths)
    rng.shuffle(labels)

    formats = list(TaggedFormat)
    reviews = []
    for i, (length, gold) in enumerate(zip(lengths, labels)):
        tokens = [_token(rng, gold) for _ in range(length)]
        fmt = formats[i % len(formats)]
        reviews.append(
            Review(
                id=f"r{i + 1:04d}",
                raw_text=" ".join(t.surface for t in tokens),
                token_count=length,
                gold_overall=gold,
                metaphors=_metaphors(rng, gold, metaphor_slots),
                tagged_text=FORMATTERS[fmt](tokens),
                tagged_format=fmt,
            )
        )
    return reviews
