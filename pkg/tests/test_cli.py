import csv
import shutil
from pathlib import Path

import pytest

from metasent.cli import main, read_classifications
from metasent.classifier import Tool, classify_corpus
from metasent.corpus import load_corpus, write_corpus
from metasent.evaluation import evaluate, read_report
from metasent.synth import generate_corpus

import oracles

DATA = Path(__file__).parent / "data"
TEN = DATA / "ten_reviews.csv"


def rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="module")
def amc_shaped(tmp_path_factory):
    path = tmp_path_factory.mktemp("synth") / "corpus.csv"
    write_corpus(path, generate_corpus(1000, seed=1))
    return path


def single_review(tmp_path, metaphor=""):
    path = tmp_path / "one.csv"
    path.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
        f"r1,رائع,positive,رائع_E4.1+,horizontal,{'جرح' if metaphor else ''},{metaphor}\n",
        encoding="utf-8",
    )
    return path


# -- preprocess ---------------------------------------------------------------


def test_preprocess_writes_ten_batches(amc_shaped, tmp_path, capsys):
    out = tmp_path / "pre" / "preprocessed.csv"
    assert main(["preprocess", "--corpus", str(amc_shaped), "--out", str(out)]) == 0
    batches = sorted(out.parent.glob("batch_*.csv"))
    assert [b.name for b in batches] == [f"batch_{i:03d}.csv" for i in range(10)]
    assert all(len(rows(b)) == 100 for b in batches)
    assert "10 batches" in capsys.readouterr().out
    assert len(load_corpus(out)) == 1000


def test_preprocess_substitutes_text(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
        "1,جيد. رائع!,positive,x_Z5,horizontal,,\n",
        encoding="utf-8",
    )
    out = tmp_path / "out" / "pre.csv"
    assert main(["preprocess", "--corpus", str(src), "--map", ".=FS,!=EX", "--out", str(out)]) == 0
    assert load_corpus(out)[0].raw_text == "جيد FS  رائع EX "
    assert (out.parent / "batch_000.csv").exists()


def test_preprocess_empty_corpus(tmp_path, capsys):
    src = tmp_path / "empty.csv"
    src.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
    )
    out = tmp_path / "out" / "pre.csv"
    assert main(["preprocess", "--corpus", str(src), "--out", str(out)]) == 0
    assert list(out.parent.glob("batch_*.csv")) == []
    assert "0 batches" in capsys.readouterr().out


def test_preprocess_unreadable(tmp_path, capsys):
    code = main(["preprocess", "--corpus", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o.csv")])
    assert code == 2
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: IOError:")


def test_preprocess_collision(tmp_path, capsys):
    src = tmp_path / "in.csv"
    src.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
        "1,EX marks the spot!,positive,x_Z5,horizontal,,\n"
    )
    assert main(["preprocess", "--corpus", str(src), "--out", str(tmp_path / "o.csv")]) == 2
    assert capsys.readouterr().err.startswith("error: CollidingPlaceholder:")


# -- classify -----------------------------------------------------------------


def test_classify_semantic_row(tmp_path):
    assert main(["classify", "--corpus", str(single_review(tmp_path)), "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "classifications.csv").read_text(encoding="utf-8").splitlines()
    assert lines == [
        "id,base_score,metaphor_contribution,final_score,predicted,counted_tags",
        "r1,0.5,0.0,0.5,positive,E4.1+",
    ]


def test_classify_with_negative_metaphor(tmp_path):
    corpus = single_review(tmp_path, "negative")
    assert main(["classify", "--corpus", str(corpus), "--tool", "metaphor", "--out", str(tmp_path)]) == 0
    (row,) = rows(tmp_path / "classifications.csv")
    assert (row["final_score"], row["predicted"], row["metaphor_contribution"]) == ("-1.5", "negative", "-2.0")


def test_classify_full_corpus(amc_shaped, tmp_path):
    assert main(["classify", "--corpus", str(amc_shaped), "--out", str(tmp_path)]) == 0
    assert len(rows(tmp_path / "classifications.csv")) == 1000


def test_classify_reports_review_id(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
        "ok,x,positive,x_Z5,horizontal,,\nbroken,y,positive,y_E1+-,horizontal,,\n"
    )
    assert main(["classify", "--corpus", str(src), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err.strip()
    assert err.startswith("error: TagParseError:") and "broken" in err


def test_classify_candidate_policy_flag(tmp_path):
    src = tmp_path / "c.csv"
    src.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
        "1,x,positive,x_E1/E2+,horizontal,,\n"
    )
    main(["classify", "--corpus", str(src), "--out", str(tmp_path / "first")])
    main(["classify", "--corpus", str(src), "--candidate-policy", "all", "--out", str(tmp_path / "all")])
    assert rows(tmp_path / "first" / "classifications.csv")[0]["predicted"] == "neutral"
    assert rows(tmp_path / "all" / "classifications.csv")[0]["predicted"] == "positive"


# -- evaluate -----------------------------------------------------------------


def test_evaluate_perfect_fixture(tmp_path, capsys):
    src = tmp_path / "perfect.csv"
    src.write_text(
        "id,text,gold_overall,tagged_text,tagged_format,metaphor_1_surface,metaphor_1_polarity\n"
        "1,a b,positive,a_E1+ b_Z5,horizontal,,\n"
        "2,a,negative,a_E1-,horizontal,,\n"
        "3,a b c,neutral,a_Z5 b_E1 c_A1,horizontal,,\n"
        "4," + " ".join(["w"] * 12) + ",positive," + " ".join(["w_E2++"] * 12) + ",horizontal,,\n"
    )
    assert main(["evaluate", "--corpus", str(src), "--out", str(tmp_path)]) == 0
    for row in rows(tmp_path / "report.csv"):
        if int(row["review_count"]):
            assert (row["precision"], row["recall"], row["f_score"]) == ("1.0", "1.0", "1.0")
    assert "All reviews" in capsys.readouterr().out


@pytest.mark.parametrize("tool", ["semantic", "metaphor"])
def test_evaluate_matches_golden(tmp_path, tool):
    assert main(["evaluate", "--corpus", str(TEN), "--tool", tool, "--out", str(tmp_path)]) == 0
    got = rows(tmp_path / "report.csv")
    golden = rows(DATA / f"ten_reviews_{tool}_weighted.csv")
    assert [r["category"] for r in got] == [r["category"] for r in golden]
    assert [r["review_count"] for r in got] == [r["review_count"] for r in golden]
    for g, e in zip(got, golden):
        for col in ("precision", "recall", "f_score"):
            assert float(g[col]) == pytest.approx(float(e[col]), abs=1e-12)


def test_golden_files_still_match_oracle():
    for tool, with_metaphor in [("semantic", False), ("metaphor", True)]:
        expected = oracles.report_rows(oracles.corpus_records(TEN, with_metaphor), "weighted")
        golden = rows(DATA / f"ten_reviews_{tool}_weighted.csv")
        for row, (label, count, p, r, f) in zip(golden, expected):
            assert (row["category"], int(row["review_count"])) == (label, count)
            assert float(row["f_score"]) == pytest.approx(float(f), abs=1e-12)


def test_evaluate_seventeen_rows(amc_shaped, tmp_path):
    assert main(["evaluate", "--corpus", str(amc_shaped), "--out", str(tmp_path)]) == 0
    report = rows(tmp_path / "report.csv")
    assert len(report) == 17
    assert [r["review_count"] for r in report[:4]] == ["1000", "702", "171", "127"]


def test_evaluate_from_classifications_file_matches_in_process(amc_shaped, tmp_path):
    flags = ["--corpus", str(amc_shaped), "--tool", "metaphor", "--out", str(tmp_path)]
    assert main(["classify", *flags]) == 0
    assert main(["evaluate", *flags, "--classifications", str(tmp_path / "classifications.csv")]) == 0
    from_file = read_report(tmp_path / "report.csv")

    reviews = load_corpus(amc_shaped)
    in_process = evaluate(reviews, classify_corpus(reviews, Tool.WITH_METAPHOR))
    assert from_file.rows == in_process.rows
    assert read_classifications(tmp_path / "classifications.csv") == classify_corpus(
        reviews, Tool.WITH_METAPHOR
    )


def test_evaluate_flags(tmp_path):
    for flags in (
        ["--aggregation", "macro"], ["--aggregation", "micro"], ["--gold-reference", "metaphor"],
        ["--metaphor-neutral-policy", "zero-total", "--tool", "metaphor"], ["--complete-bins"],
        ["--bins", "complete"], ["--tagged-format", "horizontal"],
    ):
        out = tmp_path / "_".join(f.strip("-") for f in flags)
        assert main(["evaluate", "--corpus", str(TEN), "--out", str(out), *flags]) == 0
    assert len(rows(tmp_path / "complete-bins" / "report.csv")) == 19


def test_evaluate_missing_result_exit_3(tmp_path, capsys):
    main(["classify", "--corpus", str(TEN), "--out", str(tmp_path)])
    cls = tmp_path / "classifications.csv"
    lines = cls.read_text(encoding="utf-8").splitlines()
    cls.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
    code = main(["evaluate", "--corpus", str(TEN), "--out", str(tmp_path), "--classifications", str(cls)])
    assert code == 3
    assert capsys.readouterr().err.startswith("error: MissingResult:")


# -- compare ------------------------------------------------------------------


def test_compare_identical(tmp_path, capsys):
    main(["evaluate", "--corpus", str(TEN), "--out", str(tmp_path)])
    out = tmp_path / "cmp.csv"
    assert main(["compare", str(tmp_path / "report.csv"), str(tmp_path / "report.csv"), "--out", str(out)]) == 0
    table = rows(out)
    assert len(table) == 17 and all(r["tie"] == "tie" for r in table)
    assert all(r["f_best"] == r["f_tool1"] == r["f_tool2"] for r in table)


def test_compare_disjoint_categories(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    a.write_text("category,review_count,precision,recall,f_score\nAll reviews,3,0.1,0.1,0.1\n")
    b.write_text("category,review_count,precision,recall,f_score\n>=1000 tks,3,0.1,0.1,0.1\n")
    assert main(["compare", str(a), str(b), "--out", str(tmp_path / "c.csv")]) == 3
    assert capsys.readouterr().err.startswith("error: CategoryMismatch:")


def test_compare_bad_report(tmp_path, capsys):
    a = tmp_path / "a.csv"
    a.write_text("nonsense\n1\n")
    assert main(["compare", str(a), str(a), "--out", str(tmp_path / "c.csv")]) == 2
    assert capsys.readouterr().err.startswith("error: ReportFormatError:")


# -- other commands -----------------------------------------------------------


def test_synth_is_seeded(tmp_path):
    main(["synth", "--size", "120", "--seed", "9", "--out", str(tmp_path / "a.csv")])
    main(["synth", "--size", "120", "--seed", "9", "--out", str(tmp_path / "b.csv")])
    main(["synth", "--size", "120", "--seed", "10", "--out", str(tmp_path / "c.csv")])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.csv").read_bytes() != (tmp_path / "c.csv").read_bytes()


def test_sweep_command(tmp_path, capsys):
    shutil.copy(TEN, tmp_path / "c.csv")
    assert main(["sweep", "--corpus", str(tmp_path / "c.csv"), "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "closest for semantic" in out and "closest for metaphor" in out
    # 12 configurations for tool 1, 24 for tool 2, 17 rows each
    assert len(rows(tmp_path / "sweep.csv")) == 36 * 17


def test_bad_flag_value_exits_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["classify", "--corpus", str(TEN), "--out", str(tmp_path), "--aggregation", "median"])
    assert info.value.code == 2
