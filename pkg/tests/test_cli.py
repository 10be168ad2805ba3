import json

import pytest
from click.testing import CliRunner

from scriptgrader.cli import main

EXAM = {
    "exam_id": "exam-1",
    "weights": {"w1": 0.05, "w2": 0.05, "w3": 0.10, "w4": 0.80},
    "copying_threshold": 0.4,
    "rubrics": [
        {
            "question_id": "q1",
            "question_text": "Define entropy.",
            "ideal_answer": "entropy measures the disorder of a system",
            "expected_word_count": 7,
            "keyword_groups": [{"canonical": "entropy", "synonyms": ["disorder"]}],
            "total_marks": 20,
        }
    ],
}

SUBMISSIONS = [
    {"submission_id": f"sub-{i}", "student_id": f"stu{i}", "question_id": "q1",
     "answer_text": text}
    for i, text in enumerate(
        [
            "entropy measures the disorder of a system",
            "entropy is a measure of disorder",
            "heat flows from hot to cold bodies",
            "",
        ],
        start=1,
    )
]


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "exam.json").write_text(json.dumps(EXAM))
    (tmp_path / "submissions.json").write_text(json.dumps(SUBMISSIONS))
    (tmp_path / "manual.csv").write_text(
        "stu1, e1, 17\nstu2, e1, 14\nstu3, e1, 8\nstu4, e1, 2\n"
    )
    pairs = [
        {"text_a": "entropy measures disorder", "text_b": "entropy measures disorder",
         "label": 1.0},
        {"text_a": "entropy measures disorder", "text_b": "heat flows to cold",
         "label": 0.0},
    ]
    (tmp_path / "pairs.json").write_text(json.dumps(pairs))
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "wiki.txt").write_text("entropy measures the disorder of a system always")
    return tmp_path


def run(args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


class TestGrade:
    def test_grades_and_is_byte_deterministic(self, workdir):
        args = [
            "grade", "--exam", str(workdir / "exam.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--dev-seed", "42",
            "--corpus-dir", str(workdir / "corpus"),
        ]
        r1 = run(args + ["--out", str(workdir / "out1.json")])
        assert r1.exit_code == 0, r1.output
        r2 = run(args + ["--out", str(workdir / "out2.json")])
        assert r2.exit_code == 0
        assert (workdir / "out1.json").read_bytes() == (workdir / "out2.json").read_bytes()
        reports = json.loads((workdir / "out1.json").read_text())
        assert len(reports) == 4
        ideal = next(r for r in reports if r["submission_id"] == "sub-1")
        assert ideal["s4"] == 1.0
        assert ideal["copied_flag"]  # sub-1 matches the wiki source

    def test_missing_model_exits_4(self, workdir):
        r = run([
            "grade", "--exam", str(workdir / "exam.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--out", str(workdir / "out.json"),
        ])
        assert r.exit_code == 4

    def test_missing_exam_file_exits_4(self, workdir):
        r = run([
            "grade", "--exam", str(workdir / "ghost.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--dev-seed", "1", "--out", str(workdir / "out.json"),
        ])
        assert r.exit_code == 4


class TestTrain:
    def test_trains_and_checkpoint_usable(self, workdir):
        ckpt = workdir / "model.ckpt"
        r = run([
            "train", "--pairs", str(workdir / "pairs.json"),
            "--out", str(ckpt), "--seed", "5", "--epochs", "3",
            "--d", "8", "--h", "8",
        ])
        assert r.exit_code == 0, r.output
        assert ckpt.exists()
        g = run([
            "grade", "--exam", str(workdir / "exam.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--model", str(ckpt), "--out", str(workdir / "out.json"),
        ])
        assert g.exit_code == 0, g.output

    def test_bad_label_exits_2(self, workdir):
        (workdir / "bad.json").write_text(
            json.dumps([{"text_a": "a", "text_b": "b", "label": 2.0}])
        )
        r = run(["train", "--pairs", str(workdir / "bad.json"),
                 "--out", str(workdir / "m.ckpt")])
        assert r.exit_code == 2


class TestEval:
    def test_comparison_table(self, workdir):
        out = workdir / "cmp.json"
        r = run([
            "eval", "--exam", str(workdir / "exam.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--manual", str(workdir / "manual.csv"),
            "--backends", "malstm,vanilla_rnn,cosine_tf,jaccard_set",
            "--dev-seed", "42", "--out", str(out),
        ])
        assert r.exit_code == 0, r.output
        rows = json.loads(out.read_text())
        assert [row["backend"] for row in rows] == [
            "malstm", "vanilla_rnn", "cosine_tf", "jaccard_set"
        ]
        assert all(row["error"] >= 0 for row in rows)
        assert "convention" in r.output

    def test_deterministic_across_reruns(self, workdir):
        args = [
            "eval", "--exam", str(workdir / "exam.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--manual", str(workdir / "manual.csv"),
            "--backends", "cosine_tf,jaccard_set",
        ]
        assert run(args).output == run(args).output

    def test_unknown_backend_exits_2(self, workdir):
        r = run([
            "eval", "--exam", str(workdir / "exam.json"),
            "--submissions", str(workdir / "submissions.json"),
            "--manual", str(workdir / "manual.csv"),
            "--backends", "bert",
        ])
        assert r.exit_code == 2


class TestCorpus:
    def test_build_reports_stats(self, workdir):
        r = run(["corpus", "build", "--dir", str(workdir / "corpus"), "--k", "3"])
        assert r.exit_code == 0
        assert "1 documents" in r.output

    def test_missing_dir_exits_4(self, workdir):
        r = run(["corpus", "build", "--dir", str(workdir / "nope")])
        assert r.exit_code == 4

    def test_bad_k_exits_2(self, workdir):
        r = run(["corpus", "build", "--dir", str(workdir / "corpus"), "--k", "1"])
        assert r.exit_code == 2
