"""Rule-based sentiment classification of semantically tagged Arabic reviews."""

from .classifier import (
    ClassificationResult,
    MetaphorNeutralPolicy,
    SentimentScore,
    Tool,
    classify,
    classify_corpus,
    classify_semantic,
    classify_with_metaphor,
    gold_to_score,
    metaphor_contribution,
    score_review,
    tag_score,
)
from .corpus import (
    CandidatePolicy,
    MetaphorAnnotation,
    MetaphorPolarity,
    Review,
    TaggedFormat,
    TaggedReview,
    TaggedToken,
    batch_split,
    load_corpus,
    parse_horizontal,
    parse_vertical,
    parse_xml,
    preprocess_for_tagger,
    write_corpus,
)
from .evaluation import (
    Aggregation,
    Bins,
    CategoryKey,
    ConfusionMatrix,
    EvaluationReport,
    GoldReference,
    class_metrics,
    compare,
    confusion,
    evaluate,
    f_score,
    macro_metrics,
    precision,
    recall,
)
from .tagset import Polarity, SemanticTag, Sign, is_emotion_tag, parse_tag, tag_polarity

__version__ = "0.1.0"
