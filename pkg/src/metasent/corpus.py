"""Corpus loading, tagged-text parsing, tagger preprocessing and batching.

The corpus is a UTF-8 CSV with the header::

    id,text,gold_overall,tagged_text,tagged_format,
    metaphor_1_surface,metaphor_1_polarity[,metaphor_2_surface,...]

``tagged_text`` holds the tagger output for the review in one of three
layouts (``horizontal``, ``vertical`` or ``xml``).
"""

import csv
import logging
import re
import xml.parsers.expat
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .errors import (
    BadMetaphor,
    BadPlaceholder,
    BadPolarityLabel,
    BadTaggedFormat,
    CollidingPlaceholder,
    DuplicateId,
    EmptySurface,
    MissingColumn,
    TagError,
    TagParseError,
    XmlError,
)
from .tagset import CANDIDATE_SEPARATOR, Polarity, SemanticTag, parse_tag

log = logging.getLogger(__name__)

BASE_COLUMNS = ("id", "text", "gold_overall", "tagged_text", "tagged_format")
DEFAULT_BATCH_SIZE = 100
DEFAULT_SUBSTITUTIONS = {".": " FS ", "!": " EX "}
HORIZONTAL_SEPARATOR = "_"
XML_TAG_ATTRIBUTE = "tag"

_LABEL_SYNONYMS = {
    "positive": Polarity.POSITIVE,
    "pos": Polarity.POSITIVE,
    "+": Polarity.POSITIVE,
    "+1": Polarity.POSITIVE,
    "1": Polarity.POSITIVE,
    "negative": Polarity.NEGATIVE,
    "neg": Polarity.NEGATIVE,
    "-": Polarity.NEGATIVE,
    "-1": Polarity.NEGATIVE,
    "neutral": Polarity.NEUTRAL,
    "neu": Polarity.NEUTRAL,
    "0": Polarity.NEUTRAL,
}

_METAPHOR_COLUMN = re.compile(r"metaphor_(\d+)_(surface|polarity)")


class TaggedFormat(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    XML = "xml"


class CandidatePolicy(Enum):
    """Which of several '/'-separated candidate tags on a token to keep."""

    FIRST_TAG = "first"
    ALL_TAGS = "all"


class MetaphorPolarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    NULL = "null"


@dataclass(frozen=True)
class MetaphorAnnotation:
    surface: str
    gold_polarity: MetaphorPolarity

    def __post_init__(self):
        if self.gold_polarity is not MetaphorPolarity.NULL and not self.surface:
            raise BadMetaphor(f"metaphor labelled {self.gold_polarity.value} has no surface text")


@dataclass(frozen=True)
class Review:
    id: str
    raw_text: str
    token_count: int
    gold_overall: Polarity
    metaphors: tuple = ()
    tagged_text: str = ""
    tagged_format: TaggedFormat = TaggedFormat.HORIZONTAL


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tags: tuple = ()

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")


@dataclass(frozen=True)
class TaggedReview:
    review_id: str
    tokens: tuple

    def tags(self):
        return [tag for token in self.tokens for tag in token.tags]


@dataclass(frozen=True)
class Batch:
    index: int
    reviews: tuple = field(default=())


def count_tokens(text, delimiters=None):
    """Number of maximal runs of non-delimiter characters.

    With no ``delimiters`` any Unicode whitespace separates tokens.
    """
    if delimiters is None:
        return len(text.split())
    pattern = "[" + re.escape(delimiters) + "]+"
    return sum(1 for piece in re.split(pattern, text) if piece)


def parse_polarity_label(label):
    key = label.strip().lower()
    try:
        return _LABEL_SYNONYMS[key]
    except KeyError:
        raise BadPolarityLabel(f"unrecognised polarity label {label!r}") from None


def parse_metaphor(surface, label):
    surface = surface.strip()
    if not label.strip():
        return MetaphorAnnotation(surface, MetaphorPolarity.NULL)
    return MetaphorAnnotation(surface, MetaphorPolarity(parse_polarity_label(label).value))


# -- CSV ----------------------------------------------------------------------


def _metaphor_groups(header):
    groups = {}
    for name in header:
        m = _METAPHOR_COLUMN.fullmatch(name)
        if m:
            groups.setdefault(int(m.group(1)), set()).add(m.group(2))
    if 1 not in groups:
        raise MissingColumn("missing column metaphor_1_surface/metaphor_1_polarity")
    for k in sorted(groups):
        for part in ("surface", "polarity"):
            if part not in groups[k]:
                raise MissingColumn(f"missing column metaphor_{k}_{part}")
    return sorted(groups)


def read_corpus(lines, token_delimiters=None):
    """Parse corpus CSV from an iterable of text lines."""
    reader = csv.DictReader(lines)
    header = reader.fieldnames or []
    for name in BASE_COLUMNS:
        if name not in header:
            raise MissingColumn(f"missing column {name}")
    groups = _metaphor_groups(header)

    reviews = []
    seen = set()
    for row in reader:
        rid = row["id"]
        if rid in seen:
            raise DuplicateId(f"duplicate review id {rid!r}")
        seen.add(rid)
        try:
            fmt = TaggedFormat(row["tagged_format"].strip().lower())
        except ValueError:
            raise BadTaggedFormat(
                f"review {rid}: unknown tagged_format {row['tagged_format']!r}"
            ) from None
        try:
            gold = parse_polarity_label(row["gold_overall"])
            metaphors = tuple(
                parse_metaphor(row[f"metaphor_{k}_surface"] or "", row[f"metaphor_{k}_polarity"] or "")
                for k in groups
            )
        except (BadPolarityLabel, BadMetaphor) as exc:
            raise type(exc)(f"review {rid}: {exc}") from None
        text = row["text"]
        reviews.append(
            Review(
                id=rid,
                raw_text=text,
                token_count=count_tokens(text, token_delimiters),
                gold_overall=gold,
                metaphors=metaphors,
                tagged_text=row["tagged_text"],
                tagged_format=fmt,
            )
        )
    return reviews


def load_corpus(path, token_delimiters=None):
    with open(path, encoding="utf-8", newline="") as fh:
        return read_corpus(fh, token_delimiters)


def corpus_header(reviews):
    width = max((len(r.metaphors) for r in reviews), default=1) or 1
    header = list(BASE_COLUMNS)
    for k in range(1, width + 1):
        header += [f"metaphor_{k}_surface", f"metaphor_{k}_polarity"]
    return header


def write_corpus(path, reviews, header=None):
    """Write reviews in the corpus CSV layout (inverse of ``load_corpus``)."""
    header = header or corpus_header(reviews)
    width = (len(header) - len(BASE_COLUMNS)) // 2
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for r in reviews:
            row = [r.id, r.raw_text, r.gold_overall.value, r.tagged_text, r.tagged_format.value]
            for k in range(width):
                if k < len(r.metaphors):
                    m = r.metaphors[k]
                    label = "" if m.gold_polarity is MetaphorPolarity.NULL else m.gold_polarity.value
                    row += [m.surface, label]
                else:
                    row += ["", ""]
            writer.writerow(row)


# -- tagged text --------------------------------------------------------------


def _parse_tags(field_text, position, surface, policy):
    candidates = [c for c in field_text.strip().split(CANDIDATE_SEPARATOR) if c]
    if policy is CandidatePolicy.FIRST_TAG:
        candidates = candidates[:1]
    try:
        return tuple(parse_tag(c) for c in candidates)
    except TagError as exc:
        raise TagParseError(position, surface, exc) from exc


def _missing_separator(position, item, warnings):
    message = f"token {position} ({item!r}) has no tag delimiter; kept untagged"
    log.warning(message)
    if warnings is not None:
        warnings.append(message)
    return TaggedToken(item, ())


def parse_horizontal(text, policy=CandidatePolicy.FIRST_TAG, warnings=None):
    """Parse ``surface_TAG[/TAG...]`` items separated by whitespace."""
    tokens = []
    for item in text.split():
        position = len(tokens)
        if HORIZONTAL_SEPARATOR not in item:
            tokens.append(_missing_separator(position, item, warnings))
            continue
        surface, _, tag_field = item.rpartition(HORIZONTAL_SEPARATOR)
        if not surface:
            raise EmptySurface(position)
        tokens.append(TaggedToken(surface, _parse_tags(tag_field, position, surface, policy)))
    return tokens


def parse_vertical(text, policy=CandidatePolicy.FIRST_TAG, warnings=None):
    """Parse one ``surface<TAB>TAG[/TAG...]`` token per line; blank lines are skipped."""
    tokens = []
    for line in text.splitlines():
        if not line.strip():
            continue
        position = len(tokens)
        if "\t" not in line:
            tokens.append(_missing_separator(position, line.strip(), warnings))
            continue
        surface, _, tag_field = line.partition("\t")
        surface = surface.strip()
        if not surface:
            raise EmptySurface(position)
        tokens.append(TaggedToken(surface, _parse_tags(tag_field, position, surface, policy)))
    return tokens


def _xml_error_offset(data):
    parser = xml.parsers.expat.ParserCreate()
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError:
        return parser.ErrorByteIndex
    return -1


def parse_xml(text, policy=CandidatePolicy.FIRST_TAG, warnings=None):
    """Parse an XML document whose token elements carry a ``tag`` attribute.

    Any element with a ``tag`` attribute is a token; its text content is the
    surface form. Other elements are structure and are walked through.
    """
    data = text.encode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise XmlError(_xml_error_offset(data), str(exc)) from None
    tokens = []
    for element in root.iter():
        if XML_TAG_ATTRIBUTE not in element.attrib:
            continue
        position = len(tokens)
        surface = (element.text or "").strip()
        if not surface:
            raise EmptySurface(position)
        tags = _parse_tags(element.attrib[XML_TAG_ATTRIBUTE], position, surface, policy)
        tokens.append(TaggedToken(surface, tags))
    return tokens


PARSERS = {
    TaggedFormat.HORIZONTAL: parse_horizontal,
    TaggedFormat.VERTICAL: parse_vertical,
    TaggedFormat.XML: parse_xml,
}


def _tag_field(token):
    return CANDIDATE_SEPARATOR.join(t.raw for t in token.tags)


def format_horizontal(tokens):
    return " ".join(f"{t.surface}{HORIZONTAL_SEPARATOR}{_tag_field(t)}" for t in tokens)


def format_vertical(tokens):
    return "".join(f"{t.surface}\t{_tag_field(t)}\n" for t in tokens)


def format_xml(tokens):
    body = "".join(
        f"<w {XML_TAG_ATTRIBUTE}={quoteattr(_tag_field(t))}>{escape(t.surface)}</w>" for t in tokens
    )
    return f"<text>{body}</text>"


FORMATTERS = {
    TaggedFormat.HORIZONTAL: format_horizontal,
    TaggedFormat.VERTICAL: format_vertical,
    TaggedFormat.XML: format_xml,
}


def tag_review(review, policy=CandidatePolicy.FIRST_TAG, format_override=None, warnings=None):
    fmt = format_override or review.tagged_format
    tokens = PARSERS[fmt](review.tagged_text, policy, warnings)
    return TaggedReview(review.id, tuple(tokens))


# -- preprocessing and batching -----------------------------------------------


def _check_substitutions(substitutions):
    for char, placeholder in substitutions.items():
        if len(char) != 1:
            raise BadPlaceholder(f"substitution key must be a single character: {char!r}")
        word = placeholder.strip(" ")
        if not word or not all("a" <= c.lower() <= "z" for c in word):
            raise BadPlaceholder(
                f"placeholder for {char!r} must be ASCII letters with optional surrounding spaces"
            )


def preprocess_for_tagger(text, substitutions=None):
    """Replace sentence-break characters the tagger would split on.

    Each mapped character becomes its placeholder, occurrence by occurrence.
    Refuses input that already contains a placeholder word, since the
    substitution could then not be undone.
    """
    substitutions = DEFAULT_SUBSTITUTIONS if substitutions is None else substitutions
    _check_substitutions(substitutions)
    for char, placeholder in substitutions.items():
        word = placeholder.strip(" ")
        if word in text:
            raise CollidingPlaceholder(f"placeholder {word!r} for {char!r} already occurs in the text")
    return text.translate(str.maketrans(substitutions)) if substitutions else text


def restore_from_tagger(text, substitutions=None):
    """Undo ``preprocess_for_tagger``."""
    substitutions = DEFAULT_SUBSTITUTIONS if substitutions is None else substitutions
    if not substitutions:
        return text
    reverse = {placeholder: char for char, placeholder in substitutions.items()}
    pattern = "|".join(re.escape(p) for p in sorted(reverse, key=len, reverse=True))
    return re.sub(pattern, lambda m: reverse[m.group(0)], text)


def parse_substitution_spec(spec):
    """Parse ``".=FS,!=EX"`` into ``{".": " FS ", "!": " EX "}``."""
    substitutions = {}
    pos = 0
    pattern = re.compile(r"(.)=([A-Za-z]+)(?:,|$)", re.DOTALL)
    while pos < len(spec):
        m = pattern.match(spec, pos)
        if not m:
            raise BadPlaceholder(f"bad substitution spec near {spec[pos:]!r}")
        substitutions[m.group(1)] = f" {m.group(2)} "
        pos = m.end()
    return substitutions


def batch_split(reviews, batch_size=DEFAULT_BATCH_SIZE):
    if batch_size < 1:
        raise ValueError(f"batch_size must be positive, got {batch_size}")
    return [
        Batch(index, tuple(reviews[start:start + batch_size]))
        for index, start in enumerate(range(0, len(reviews), batch_size))
    ]


def write_batches(directory, batches, header=None):
    directory = Path(directory)
    paths = []
    for batch in batches:
        path = directory / f"batch_{batch.index:03d}.csv"
        write_corpus(path, batch.reviews, header)
        paths.append(path)
    return paths
