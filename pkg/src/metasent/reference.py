"""Published AMC results and a sweep over the unstated evaluation choices.

The published per-category figures leave three things open: how per-class
metrics were averaged, which candidate tag was kept on ambiguous tokens,
and which gold labels the metaphor-adjusted tool was scored against. The
sweep runs every combination and ranks them by distance to the published
rows.
"""

import csv
import itertools
from dataclasses import dataclass

from .classifier import MetaphorNeutralPolicy, Tool, classify_corpus
from .corpus import CandidatePolicy
from .evaluation import (
    ALL_REVIEWS,
    PAPER_BINS,
    POLARITY_CATEGORIES,
    Aggregation,
    Bins,
    EvaluationReport,
    GoldReference,
    MetricsRow,
    UNBINNED,
    evaluate,
)

TABLE_ORDER = (ALL_REVIEWS,) + POLARITY_CATEGORIES + PAPER_BINS


def _report(values):
    rows = tuple(
        MetricsRow(category, count, p, r, f)
        for category, (count, p, r, f) in zip(TABLE_ORDER, values)
    )
    return EvaluationReport(rows, MetricsRow(UNBINNED, 29, 0.0, 0.0, 0.0), Aggregation.WEIGHTED)


# (review count, precision, recall, F) per category, in TABLE_ORDER.
PUBLISHED_SEMANTIC_ONLY = _report([
    (1000, 0.641, 0.487, 0.526),
    (702, 0.831, 0.520, 0.640),
    (171, 0.263, 0.626, 0.370),
    (127, 0.097, 0.118, 0.107),
    (5, 0.000, 0.000, 0.000),
    (32, 0.686, 0.375, 0.447),
    (268, 0.617, 0.369, 0.426),
    (24, 0.747, 0.500, 0.549),
    (30, 0.783, 0.633, 0.660),
    (31, 0.882, 0.452, 0.582),
    (57, 0.651, 0.456, 0.512),
    (53, 0.548, 0.472, 0.473),
    (70, 0.679, 0.500, 0.548),
    (99, 0.620, 0.556, 0.577),
    (149, 0.599, 0.557, 0.568),
    (90, 0.689, 0.600, 0.621),
    (63, 0.744, 0.603, 0.661),
])

PUBLISHED_WITH_METAPHOR = _report([
    (1000, 0.564, 0.305, 0.351),
    (702, 0.735, 0.285, 0.411),
    (171, 0.190, 0.281, 0.226),
    (127, 0.120, 0.449, 0.189),
    (5, 1.000, 0.200, 0.333),
    (32, 0.637, 0.500, 0.526),
    (268, 0.554, 0.354, 0.415),
    (24, 0.582, 0.458, 0.502),
    (30, 0.580, 0.467, 0.513),
    (31, 0.729, 0.355, 0.437),
    (57, 0.529, 0.298, 0.326),
    (53, 0.577, 0.340, 0.359),
    (70, 0.601, 0.243, 0.332),
    (99, 0.561, 0.323, 0.359),
    (149, 0.599, 0.275, 0.271),
    (90, 0.414, 0.144, 0.099),
    (63, 0.878, 0.159, 0.170),
])

PUBLISHED = {
    Tool.SEMANTIC_ONLY: PUBLISHED_SEMANTIC_ONLY,
    Tool.WITH_METAPHOR: PUBLISHED_WITH_METAPHOR,
}


@dataclass(frozen=True)
class SweepConfig:
    tool: Tool
    aggregation: Aggregation
    candidate_policy: CandidatePolicy
    gold_reference: GoldReference
    neutral_policy: MetaphorNeutralPolicy

    def describe(self):
        return (
            f"tool={self.tool.value} aggregation={self.aggregation.value} "
            f"candidates={self.candidate_policy.value} gold={self.gold_reference.value} "
            f"metaphor-neutral={self.neutral_policy.value}"
        )


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    report: EvaluationReport
    deltas: tuple  # per row: (category, d_count, d_precision, d_recall, d_f)

    @property
    def mean_abs_delta(self):
        values = [abs(d) for row in self.deltas for d in row[2:]]
        return sum(values) / len(values)


def sweep_configs():
    for tool in Tool:
        neutral = list(MetaphorNeutralPolicy) if tool is Tool.WITH_METAPHOR else [
            MetaphorNeutralPolicy.ZERO_CONTRIBUTION
        ]
        for agg, cand, gold, neu in itertools.product(
            Aggregation, CandidatePolicy, GoldReference, neutral
        ):
            yield SweepConfig(tool, agg, cand, gold, neu)


def row_deltas(report, published):
    deltas = []
    for ref in published.rows:
        got = report.row(ref.category)
        deltas.append((
            ref.category,
            got.review_count - ref.review_count,
            got.precision - ref.precision,
            got.recall - ref.recall,
            got.f_score - ref.f_score,
        ))
    return tuple(deltas)


def run_sweep(reviews, configs=None):
    results = []
    cache = {}
    for config in configs or sweep_configs():
        key = (config.tool, config.candidate_policy, config.neutral_policy)
        if key not in cache:
            cache[key] = classify_corpus(
                reviews, config.tool,
                candidate_policy=config.candidate_policy,
                neutral_policy=config.neutral_policy,
            )
        report = evaluate(
            reviews, cache[key], config.aggregation, Bins.PAPER, config.gold_reference
        )
        results.append(SweepResult(config, report, row_deltas(report, PUBLISHED[config.tool])))
    return results


def best_per_tool(results):
    best = {}
    for result in results:
        current = best.get(result.config.tool)
        if current is None or result.mean_abs_delta < current.mean_abs_delta:
            best[result.config.tool] = result
    return best


SWEEP_HEADER = (
    "tool", "aggregation", "candidate_policy", "gold_reference", "metaphor_neutral_policy",
    "category", "review_count", "published_count", "precision", "published_precision",
    "recall", "published_recall", "f_score", "published_f_score", "mean_abs_delta",
)


def write_sweep(path, results):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for result in results:
            c = result.config
            published = PUBLISHED[c.tool]
            for ref in published.rows:
                got = result.report.row(ref.category)
                writer.writerow([
                    c.tool.value, c.aggregation.value, c.candidate_policy.value,
                    c.gold_reference.value, c.neutral_policy.value, ref.category.label,
                    got.review_count, ref.review_count,
                    f"{got.precision:.6f}", f"{ref.precision:.3f}",
                    f"{got.recall:.6f}", f"{ref.recall:.3f}",
                    f"{got.f_score:.6f}", f"{ref.f_score:.3f}",
                    f"{result.mean_abs_delta:.6f}",
                ])
