"""Three-class precision / recall / F-score, bucketed by polarity and length.

Undefined ratios (zero denominators) are reported as 0.
"""

import csv
import io
import math
import re
from dataclasses import dataclass
from enum import Enum

from .classifier import classify, gold_to_score
from .corpus import MetaphorPolarity
from .errors import CategoryMismatch, DuplicateResult, MissingResult, ReportFormatError
from .tagset import POLARITIES, Polarity

REPORT_HEADER = ("category", "review_count", "precision", "recall", "f_score")
COMPARISON_HEADER = ("category", "f_tool1", "f_tool2", "f_best", "tie")


class Aggregation(Enum):
    MACRO = "macro"
    MICRO = "micro"
    WEIGHTED = "weighted"


class GoldReference(Enum):
    OVERALL = "overall"
    METAPHOR = "metaphor"


class CategoryKind(Enum):
    ALL = "all"
    GOLD_POLARITY = "polarity"
    LENGTH = "length"
    UNBINNED = "unbinned"


@dataclass(frozen=True)
class CategoryKey:
    kind: CategoryKind
    polarity: Polarity = None
    lower: int = None
    upper: int = None  # None means unbounded

    @property
    def label(self):
        if self.kind is CategoryKind.ALL:
            return "All reviews"
        if self.kind is CategoryKind.GOLD_POLARITY:
            return f"{self.polarity.value.capitalize()} reviews"
        if self.kind is CategoryKind.UNBINNED:
            return "Unbinned"
        if self.upper is None:
            return f">={self.lower} tks"
        if self.lower == self.upper:
            return f"{self.lower} tks"
        return f"{self.upper} tks ~{self.lower} tks"

    def __str__(self):
        return self.label

    def contains(self, token_count):
        if self.kind is not CategoryKind.LENGTH:
            return False
        return token_count >= self.lower and (self.upper is None or token_count <= self.upper)

    @classmethod
    def from_label(cls, label):
        label = label.strip()
        if label == "All reviews":
            return ALL_REVIEWS
        if label == "Unbinned":
            return UNBINNED
        for polarity in POLARITIES:
            if label == f"{polarity.value.capitalize()} reviews":
                return cls(CategoryKind.GOLD_POLARITY, polarity)
        if m := re.fullmatch(r">=(\d+) tks", label):
            return length_bin(int(m.group(1)), None)
        if m := re.fullmatch(r"(\d+) tks ~(\d+) tks", label):
            return length_bin(int(m.group(2)), int(m.group(1)))
        if m := re.fullmatch(r"(\d+) tks", label):
            return length_bin(int(m.group(1)), int(m.group(1)))
        # "<10 tokens and >=5 tokens" / ">=1000 tokens"
        if m := re.fullmatch(r"<\s*(\d+) tokens and >=\s*(\d+) tokens", label):
            return length_bin(int(m.group(2)), int(m.group(1)) - 1)
        if m := re.fullmatch(r">=\s*(\d+) tokens", label):
            return length_bin(int(m.group(1)), None)
        raise ReportFormatError(f"unknown category label {label!r}")


def length_bin(lower, upper):
    return CategoryKey(CategoryKind.LENGTH, lower=lower, upper=upper)


ALL_REVIEWS = CategoryKey(CategoryKind.ALL)
UNBINNED = CategoryKey(CategoryKind.UNBINNED)
POLARITY_CATEGORIES = tuple(CategoryKey(CategoryKind.GOLD_POLARITY, p) for p in POLARITIES)

PAPER_BINS = tuple(
    length_bin(lo, hi)
    for lo, hi in [
        (1000, None), (500, 999), (100, 499), (90, 99), (70, 79), (60, 69), (50, 59),
        (40, 49), (30, 39), (20, 29), (10, 19), (5, 9), (1, 4),
    ]
)
# Adds the two gaps in the published bin list: 80-89 tokens and empty reviews.
COMPLETE_BINS = PAPER_BINS[:4] + (length_bin(80, 89),) + PAPER_BINS[4:] + (length_bin(0, 0),)


class Bins(Enum):
    PAPER = "paper"
    COMPLETE = "complete"

    @property
    def keys(self):
        return PAPER_BINS if self is Bins.PAPER else COMPLETE_BINS


# -- counting -----------------------------------------------------------------


@dataclass(frozen=True)
class ClassCounts:
    tp: int
    fp: int
    fn: int


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts indexed ``counts[gold][predicted]`` in ``POLARITIES`` order."""

    counts: tuple = ((0, 0, 0), (0, 0, 0), (0, 0, 0))

    def cell(self, gold, predicted):
        return self.counts[POLARITIES.index(gold)][POLARITIES.index(predicted)]

    @property
    def total(self):
        return sum(map(sum, self.counts))

    def support(self, target):
        return sum(self.counts[POLARITIES.index(target)])

    def class_counts(self, target):
        i = POLARITIES.index(target)
        tp = self.counts[i][i]
        column = sum(row[i] for row in self.counts)
        return ClassCounts(tp=tp, fp=column - tp, fn=sum(self.counts[i]) - tp)


def confusion(pairs):
    grid = [[0, 0, 0] for _ in POLARITIES]
    for gold, predicted in pairs:
        grid[POLARITIES.index(gold)][POLARITIES.index(predicted)] += 1
    return ConfusionMatrix(tuple(tuple(row) for row in grid))


def _ratio(num, den):
    return num / den if den else 0.0


def precision(c):
    return _ratio(c.tp, c.tp + c.fp)


def recall(c):
    return _ratio(c.tp, c.tp + c.fn)


def f_score(p, r):
    return _ratio(2 * p * r, p + r)


# -- rows ---------------------------------------------------------------------


@dataclass(frozen=True)
class MetricsRow:
    category: CategoryKey
    review_count: int
    precision: float
    recall: float
    f_score: float


def class_metrics(m, target, category=None):
    c = m.class_counts(target)
    p, r = precision(c), recall(c)
    category = category or CategoryKey(CategoryKind.GOLD_POLARITY, target)
    return MetricsRow(category, m.support(target), p, r, f_score(p, r))


def macro_metrics(m, aggregation=Aggregation.MACRO, category=ALL_REVIEWS):
    """Collapse the three per-class rows into one.

    ``MACRO`` is the plain mean over all three classes, including classes
    with no support. ``WEIGHTED`` weights each class by its gold support.
    ``MICRO`` pools the one-vs-rest counts, which makes all three metrics
    equal to accuracy. Under both means F is the mean of per-class F.
    """
    if aggregation is Aggregation.MICRO:
        pooled = [m.class_counts(t) for t in POLARITIES]
        c = ClassCounts(
            sum(x.tp for x in pooled), sum(x.fp for x in pooled), sum(x.fn for x in pooled)
        )
        p, r = precision(c), recall(c)
        return MetricsRow(category, m.total, p, r, f_score(p, r))

    rows = [class_metrics(m, t) for t in POLARITIES]
    if aggregation is Aggregation.MACRO:
        weights = [1] * len(rows)
    else:
        weights = [row.review_count for row in rows]
    norm = sum(weights)

    def mean(attr):
        return _ratio(sum(w * getattr(row, attr) for w, row in zip(weights, rows)), norm)

    return MetricsRow(category, m.total, mean("precision"), mean("recall"), mean("f_score"))


def bucket(review, bins=Bins.PAPER):
    for key in bins.keys:
        if key.contains(review.token_count):
            return key
    return UNBINNED


# -- reports ------------------------------------------------------------------


def metaphor_gold(review):
    """Reference label built from a review's metaphor annotations.

    Each labelled metaphor is mapped to +1/-1/0 and the sign of the sum is
    the label; reviews with no labelled metaphor are neutral.
    """
    total = sum(
        (gold_to_score(Polarity(m.gold_polarity.value))
         for m in review.metaphors
         if m.gold_polarity is not MetaphorPolarity.NULL),
        start=gold_to_score(Polarity.NEUTRAL),
    )
    return classify(total)


def reference_label(review, gold_reference=GoldReference.OVERALL):
    if gold_reference is GoldReference.METAPHOR:
        return metaphor_gold(review)
    return review.gold_overall


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple
    unbinned: MetricsRow
    aggregation: Aggregation = Aggregation.WEIGHTED

    def row(self, category):
        for row in self.rows:
            if row.category == category:
                return row
        raise KeyError(category)

    @property
    def categories(self):
        return [row.category for row in self.rows]


def _pair_results(corpus, results):
    by_id = {}
    for result in results:
        if result.review_id in by_id:
            raise DuplicateResult(f"more than one result for review {result.review_id!r}")
        by_id[result.review_id] = result
    ids = {r.id for r in corpus}
    extra = sorted(set(by_id) - ids)
    if extra:
        raise MissingResult(f"results for unknown reviews: {', '.join(extra[:5])}")
    paired = []
    for review in corpus:
        if review.id not in by_id:
            raise MissingResult(f"no result for review {review.id!r}")
        paired.append((review, by_id[review.id].predicted))
    return paired


def evaluate(
    corpus,
    results,
    aggregation=Aggregation.WEIGHTED,
    bins=Bins.PAPER,
    gold_reference=GoldReference.OVERALL,
):
    paired = _pair_results(corpus, results)
    labelled = [(review, reference_label(review, gold_reference), pred) for review, pred in paired]

    full = confusion((gold, pred) for _, gold, pred in labelled)
    rows = [macro_metrics(full, aggregation, ALL_REVIEWS)]
    rows += [class_metrics(full, key.polarity, key) for key in POLARITY_CATEGORIES]

    buckets = {key: [] for key in bins.keys}
    buckets[UNBINNED] = []
    for review, gold, pred in labelled:
        buckets[bucket(review, bins)].append((gold, pred))
    for key in bins.keys:
        rows.append(macro_metrics(confusion(buckets[key]), aggregation, key))
    unbinned = macro_metrics(confusion(buckets[UNBINNED]), aggregation, UNBINNED)
    return EvaluationReport(tuple(rows), unbinned, aggregation)


@dataclass(frozen=True)
class ComparisonRow:
    category: CategoryKey
    f_tool1: float
    f_tool2: float
    f_best: float

    @property
    def tie(self):
        return self.f_tool1 == self.f_tool2


def compare(report_tool1, report_tool2):
    first = report_tool1.categories
    second = report_tool2.categories
    if len(set(first)) != len(first) or set(first) != set(second) or len(first) != len(second):
        missing = [str(c) for c in set(first) ^ set(second)]
        raise CategoryMismatch(
            "reports cover different categories" + (f": {', '.join(sorted(missing))}" if missing else "")
        )
    rows = []
    for category in first:
        f1 = report_tool1.row(category).f_score
        f2 = report_tool2.row(category).f_score
        rows.append(ComparisonRow(category, f1, f2, max(f1, f2)))
    return rows


# -- serialisation ------------------------------------------------------------


def _num(x):
    return repr(float(x))


def _write_rows(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_report(path, report):
    _write_rows(
        path,
        REPORT_HEADER,
        [
            (r.category.label, r.review_count, _num(r.precision), _num(r.recall), _num(r.f_score))
            for r in report.rows
        ],
    )


def _cell(text):
    # Blank cells stand for values the source did not publish.
    return float(text) if text.strip() else math.nan


def read_report(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != REPORT_HEADER:
            raise ReportFormatError(f"{path}: expected header {','.join(REPORT_HEADER)}")
        rows = []
        for line in reader:
            try:
                rows.append(
                    MetricsRow(
                        CategoryKey.from_label(line["category"]),
                        int(line["review_count"]),
                        _cell(line["precision"]),
                        _cell(line["recall"]),
                        _cell(line["f_score"]),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ReportFormatError(f"{path}: bad row {line}: {exc}") from None
    return EvaluationReport(tuple(rows), MetricsRow(UNBINNED, 0, 0.0, 0.0, 0.0))


def write_comparison(path, rows):
    _write_rows(
        path,
        COMPARISON_HEADER,
        [
            (r.category.label, _num(r.f_tool1), _num(r.f_tool2), _num(r.f_best), "tie" if r.tie else "")
            for r in rows
        ],
    )


def _table(header, body, align):
    widths = [max(len(str(x)) for x in col) for col in zip(header, *body)]
    out = io.StringIO()

    def line(cells):
        parts = [
            str(c).ljust(w) if a == "<" else str(c).rjust(w) for c, w, a in zip(cells, widths, align)
        ]
        out.write("  ".join(parts).rstrip() + "\n")

    line(header)
    line(["-" * w for w in widths])
    for cells in body:
        line(cells)
    return out.getvalue()


def render_report(report, digits=3):
    body = [
        (r.category.label, r.review_count, f"{r.precision:.{digits}f}", f"{r.recall:.{digits}f}",
         f"{r.f_score:.{digits}f}")
        for r in report.rows
    ]
    text = _table(("Category", "Reviews", "Precision", "Recall", "F-score"), body, "<>>>>")
    if report.unbinned.review_count:
        u = report.unbinned
        text += (
            f"({u.review_count} reviews fall outside every length bin: "
            f"P {u.precision:.{digits}f}  R {u.recall:.{digits}f}  F {u.f_score:.{digits}f})\n"
        )
    return text


def render_comparison(rows, digits=8):
    body = [
        (r.category.label, f"{r.f_tool1:.{digits}f}", f"{r.f_tool2:.{digits}f}",
         f"{r.f_best:.{digits}f}", "tie" if r.tie else "")
        for r in rows
    ]
    return _table(("Category", "F tool 1", "F tool 2", "Best", ""), body, "<>>><")
