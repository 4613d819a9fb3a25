"""Command line front end.

    metasent preprocess --corpus amc.csv --map ".=FS,!=EX" --out work/preprocessed.csv
    metasent classify   --corpus amc.csv --tool metaphor --out run/
    metasent evaluate   --corpus amc.csv --tool metaphor --out run/
    metasent compare    report1.csv report2.csv --out comparison.csv
    metasent sweep      --corpus amc.csv --out sweep/
    metasent synth      --size 1000 --seed 7 --out synthetic.csv

Errors are reported on stderr as a single ``error: <Code>: message`` line.
Exit status is 0 on success, 2 for unreadable or unparsable input and 3 for
inputs that do not fit together.
"""

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import corpus as corpus_mod
from .classifier import (
    ClassificationResult,
    MetaphorNeutralPolicy,
    SentimentScore,
    Tool,
    classify_corpus,
)
from .corpus import CandidatePolicy, TaggedFormat
from .errors import MetasentError, ReportFormatError
from .evaluation import (
    Aggregation,
    Bins,
    GoldReference,
    compare,
    evaluate,
    read_report,
    render_comparison,
    render_report,
    write_comparison,
    write_report,
)
from .tagset import Polarity, parse_tag

log = logging.getLogger("metasent")

CLASSIFICATIONS_HEADER = (
    "id", "base_score", "metaphor_contribution", "final_score", "predicted", "counted_tags",
)
CLASSIFICATIONS_FILE = "classifications.csv"
REPORT_FILE = "report.csv"

TOOL_NAMES = {"semantic": Tool.SEMANTIC_ONLY, "metaphor": Tool.WITH_METAPHOR}


@dataclass(frozen=True)
class RunConfig:
    corpus_path: Path
    output_dir: Path
    tool: Tool = Tool.SEMANTIC_ONLY
    tagged_format_override: TaggedFormat = None
    aggregation: Aggregation = Aggregation.WEIGHTED
    candidate_policy: CandidatePolicy = CandidatePolicy.FIRST_TAG
    metaphor_neutral_policy: MetaphorNeutralPolicy = MetaphorNeutralPolicy.ZERO_CONTRIBUTION
    gold_reference: GoldReference = GoldReference.OVERALL
    bins: Bins = Bins.PAPER

    @classmethod
    def from_args(cls, args):
        return cls(
            corpus_path=Path(args.corpus),
            output_dir=Path(args.out),
            tool=TOOL_NAMES[args.tool],
            tagged_format_override=TaggedFormat(args.tagged_format) if args.tagged_format else None,
            aggregation=Aggregation(args.aggregation),
            candidate_policy=CandidatePolicy(args.candidate_policy),
            metaphor_neutral_policy=MetaphorNeutralPolicy(args.metaphor_neutral_policy),
            gold_reference=GoldReference(args.gold_reference),
            bins=Bins(args.bins),
        )


# -- classification files -----------------------------------------------------


def write_classifications(path, results):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CLASSIFICATIONS_HEADER)
        for r in results:
            writer.writerow([
                r.review_id, str(r.base_score), str(r.metaphor_contribution), str(r.final_score),
                r.predicted.value, ";".join(t.raw for t in r.counted_tags),
            ])


def read_classifications(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CLASSIFICATIONS_HEADER:
            raise ReportFormatError(f"{path}: expected header {','.join(CLASSIFICATIONS_HEADER)}")
        results = []
        for line in reader:
            try:
                results.append(ClassificationResult(
                    review_id=line["id"],
                    base_score=SentimentScore.parse(line["base_score"]),
                    metaphor_contribution=SentimentScore.parse(line["metaphor_contribution"]),
                    final_score=SentimentScore.parse(line["final_score"]),
                    predicted=Polarity(line["predicted"]),
                    counted_tags=tuple(parse_tag(t) for t in line["counted_tags"].split(";") if t),
                ))
            except (TypeError, ValueError) as exc:
                raise ReportFormatError(f"{path}: bad row for {line.get('id')!r}: {exc}") from None
    return results


# -- commands -----------------------------------------------------------------


def _load(config):
    return corpus_mod.load_corpus(config.corpus_path)


def _run_classifier(config, reviews):
    return classify_corpus(
        reviews,
        config.tool,
        candidate_policy=config.candidate_policy,
        neutral_policy=config.metaphor_neutral_policy,
        format_override=config.tagged_format_override,
    )


def cmd_preprocess(input_path, substitutions, out_path, batch_size=corpus_mod.DEFAULT_BATCH_SIZE):
    """Substitute sentence-break characters and split into tagger batches.

    Writes the substituted corpus to ``out_path`` and ``batch_NNN.csv``
    files beside it. Returns the number of batches.
    """
    with open(input_path, encoding="utf-8", newline="") as fh:
        header = next(csv.reader(fh), None)
    reviews = corpus_mod.load_corpus(input_path)
    substituted = [
        corpus_mod.Review(
            id=r.id,
            raw_text=corpus_mod.preprocess_for_tagger(r.raw_text, substitutions),
            token_count=r.token_count,
            gold_overall=r.gold_overall,
            metaphors=r.metaphors,
            tagged_text=r.tagged_text,
            tagged_format=r.tagged_format,
        )
        for r in reviews
    ]
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    corpus_mod.write_corpus(out_path, substituted, header)
    batches = corpus_mod.batch_split(substituted, batch_size)
    corpus_mod.write_batches(out_path.parent, batches, header)
    print(f"{len(batches)} batches written to {out_path.parent}")
    return len(batches)


def cmd_classify(config):
    reviews = _load(config)
    results = _run_classifier(config, reviews)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    path = config.output_dir / CLASSIFICATIONS_FILE
    write_classifications(path, results)
    print(f"{len(results)} reviews classified -> {path}")
    return results


def cmd_evaluate(config, classifications=None):
    reviews = _load(config)
    if classifications is not None:
        results = read_classifications(classifications)
    else:
        results = _run_classifier(config, reviews)
    report = evaluate(reviews, results, config.aggregation, config.bins, config.gold_reference)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    write_report(config.output_dir / REPORT_FILE, report)
    sys.stdout.write(render_report(report))
    return report


def cmd_compare(report1, report2, out):
    rows = compare(read_report(report1), read_report(report2))
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_comparison(out, rows)
    sys.stdout.write(render_comparison(rows))
    return rows


def cmd_sweep(config):
    from .reference import best_per_tool, run_sweep, write_sweep

    reviews = _load(config)
    results = run_sweep(reviews)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    path = config.output_dir / "sweep.csv"
    write_sweep(path, results)
    for tool, best in best_per_tool(results).items():
        print(f"closest for {tool.value}: {best.config.describe()} "
              f"(mean |delta| {best.mean_abs_delta:.4f})")
    print(f"{len(results)} configurations -> {path}")
    return results


def cmd_synth(size, seed, out):
    from .synth import generate_corpus

    reviews = generate_corpus(size, seed)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    corpus_mod.write_corpus(out, reviews)
    print(f"{len(reviews)} synthetic reviews -> {out}")
    return reviews


# -- argument parsing ---------------------------------------------------------


def _run_options():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--corpus", required=True, help="corpus CSV")
    parent.add_argument("--out", required=True, help="output directory")
    parent.add_argument("--tool", choices=sorted(TOOL_NAMES), default="semantic",
                        help="semantic: emotion tags only; metaphor: plus metaphor annotations")
    parent.add_argument("--tagged-format", choices=[f.value for f in TaggedFormat],
                        help="override the tagged_format column for every review")
    parent.add_argument("--aggregation", choices=[a.value for a in Aggregation],
                        default=Aggregation.WEIGHTED.value)
    parent.add_argument("--candidate-policy", choices=[c.value for c in CandidatePolicy],
                        default=CandidatePolicy.FIRST_TAG.value)
    parent.add_argument("--metaphor-neutral-policy", choices=[p.value for p in MetaphorNeutralPolicy],
                        default=MetaphorNeutralPolicy.ZERO_CONTRIBUTION.value)
    parent.add_argument("--gold-reference", choices=[g.value for g in GoldReference],
                        default=GoldReference.OVERALL.value)
    parent.add_argument("--bins", choices=[b.value for b in Bins], default=Bins.PAPER.value)
    parent.add_argument("--complete-bins", dest="bins", action="store_const",
                        const=Bins.COMPLETE.value, help="same as --bins complete")
    return parent


def build_parser():
    parser = argparse.ArgumentParser(prog="metasent", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    run = _run_options()

    p = sub.add_parser("preprocess", help="substitute punctuation and batch the corpus")
    p.add_argument("--corpus", required=True, dest="input")
    p.add_argument("--map", default=".=FS,!=EX", help="CHAR=LETTERS pairs, comma separated")
    p.add_argument("--batch-size", type=int, default=corpus_mod.DEFAULT_BATCH_SIZE)
    p.add_argument("--out", required=True, help="substituted corpus CSV; batches go beside it")

    sub.add_parser("classify", parents=[run], help="write classifications.csv")

    p = sub.add_parser("evaluate", parents=[run], help="write report.csv and print the table")
    p.add_argument("--classifications", help="use an existing classifications.csv")

    p = sub.add_parser("compare", help="per-category best F of two reports")
    p.add_argument("report1")
    p.add_argument("report2")
    p.add_argument("--out", required=True, help="comparison CSV")

    sub.add_parser("sweep", parents=[run], help="rank evaluation interpretations against published rows")

    p = sub.add_parser("synth", help="write a synthetic AMC-shaped corpus")
    p.add_argument("--size", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    return parser


def run(args):
    if args.command == "preprocess":
        cmd_preprocess(
            args.input, corpus_mod.parse_substitution_spec(args.map), args.out, args.batch_size
        )
    elif args.command == "compare":
        cmd_compare(args.report1, args.report2, args.out)
    elif args.command == "synth":
        cmd_synth(args.size, args.seed, args.out)
    else:
        config = RunConfig.from_args(args)
        if args.command == "classify":
            cmd_classify(config)
        elif args.command == "evaluate":
            cmd_evaluate(config, args.classifications)
        elif args.command == "sweep":
            cmd_sweep(config)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s"
    )
    try:
        run(args)
    except MetasentError as exc:
        print(f"error: {exc.code}: {_one_line(exc)}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: IOError: {_one_line(exc)}", file=sys.stderr)
        return 2
    except UnicodeDecodeError as exc:
        print(f"error: EncodingError: {_one_line(exc)}", file=sys.stderr)
        return 2
    except (csv.Error, ValueError) as exc:
        print(f"error: InvalidInput: {_one_line(exc)}", file=sys.stderr)
        return 2
    return 0


def _one_line(exc):
    return " ".join(str(exc).split())


if __name__ == "__main__":
    sys.exit(main())
