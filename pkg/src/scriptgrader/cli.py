"""Command-line entry points: serve, grade, train, eval, corpus build.

Exit codes: 0 success, 2 validation error, 3 state error, 4 missing
artifact (file or model checkpoint).
"""
from __future__ import annotations

import json
import os
import sys

import click

from .aggregate import WeightVector, grade_submission
from .domain import Submission, ValidationError
from .evaluation import (
    BaselineKind,
    compare_models,
    comparison_json,
    format_comparison,
    load_manual_scores,
)
from .integrity import DEFAULT_SHINGLE_SIZE, build_corpus, load_corpus_dir
from .scorers import LanguageModel
from .service.core import (
    GradingService,
    MissingModelCheckpoint,
    WrongState,
    rubric_from_dict,
)
from .service.store import Store
from .similarity import model as sim
from .textpipe import build_vocabulary, tokenize

EXIT_VALIDATION = 2
EXIT_STATE = 3
EXIT_MISSING = 4


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_json(path):
    if not os.path.exists(path):
        _fail(EXIT_MISSING, f"file not found: {path}")
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def _load_exam(path):
    exam = _load_json(path)
    try:
        rubrics = {
            r["question_id"]: rubric_from_dict(r) for r in exam["rubrics"]
        }
    except (KeyError, TypeError) as exc:
        _fail(EXIT_VALIDATION, f"malformed exam file: {exc}")
    weights = WeightVector(**exam["weights"]) if exam.get("weights") else WeightVector()
    threshold = float(exam.get("copying_threshold", 0.4))
    return exam, rubrics, weights, threshold


def _load_submissions(path) -> list[Submission]:
    return [
        Submission(
            submission_id=s["submission_id"],
            student_id=s["student_id"],
            question_id=s["question_id"],
            answer_text=s.get("answer_text", ""),
            submitted_at=s.get("submitted_at", ""),
        )
        for s in _load_json(path)
    ]


def _dev_model(rubrics, submissions, seed: int, cell_kind: str = sim.LSTM):
    texts = [r.ideal_answer for r in rubrics.values()]
    texts += [s.answer_text for s in submissions]
    seqs = [tokenize(t) for t in texts if t.strip()] or [tokenize("placeholder")]
    vocab = build_vocabulary(seqs, min_count=1)
    return sim.init_model(vocab, sim.TrainingConfig(seed=seed), cell_kind=cell_kind)


def _resolve_model(model_path, dev_seed, rubrics, submissions, cell_kind=sim.LSTM):
    if model_path:
        if not os.path.exists(model_path):
            _fail(EXIT_MISSING, f"model checkpoint not found: {model_path}")
        try:
            return sim.load_checkpoint(model_path)
        except sim.CheckpointError as exc:
            _fail(EXIT_VALIDATION, f"bad checkpoint: {exc}")
    if dev_seed is None:
        _fail(EXIT_MISSING, "no model checkpoint given (use --model or --dev-seed)")
    return _dev_model(rubrics, submissions, dev_seed, cell_kind)


def _language_model(lm_corpus, rubrics) -> LanguageModel:
    if lm_corpus:
        return LanguageModel.from_corpus_file(lm_corpus)
    return LanguageModel.from_documents(r.ideal_answer for r in rubrics.values())


@click.group()
def main():
    """Automated grading of descriptive exam answers."""


@main.command()
@click.option("--exam", "exam_path", required=True, type=click.Path())
@click.option("--submissions", "subs_path", required=True, type=click.Path())
@click.option("--model", "model_path", type=click.Path(), default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--corpus-dir", type=click.Path(), default=None)
@click.option("--lm-corpus", type=click.Path(), default=None)
@click.option("--dev-seed", type=int, default=None, help="Grade with a fresh seeded model.")
def grade(exam_path, subs_path, model_path, out_path, corpus_dir, lm_corpus, dev_seed):
    """Grade a submissions file offline and write a score-report file."""
    exam, rubrics, weights, threshold = _load_exam(exam_path)
    submissions = _load_submissions(subs_path)
    model = _resolve_model(model_path, dev_seed, rubrics, submissions)
    lm = _language_model(lm_corpus, rubrics)
    corpus = load_corpus_dir(corpus_dir) if corpus_dir else build_corpus([])
    reports = []
    for sub in sorted(submissions, key=lambda s: s.submission_id):
        breakdown = grade_submission(
            rubrics[sub.question_id], sub, model, lm, corpus, weights, threshold
        )
        reports.append(
            {
                "submission_id": sub.submission_id,
                "student_id": sub.student_id,
                "question_id": sub.question_id,
                "s1": breakdown.s1,
                "s2": breakdown.s2,
                "s3": breakdown.s3,
                "s4": breakdown.s4,
                "copying_index": breakdown.copying_index,
                "copied_flag": breakdown.copied_flag,
                "total_fraction": breakdown.total_fraction,
                "awarded_marks": breakdown.awarded_marks,
            }
        )
    with open(out_path, "w", encoding="utf-8") as f:
        json.dump(reports, f, indent=2, sort_keys=True)
        f.write("\n")
    click.echo(f"graded {len(reports)} submissions -> {out_path}")


@main.command()
@click.option("--pairs", "pairs_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--seed", type=int, default=0)
@click.option("--epochs", type=int, default=30)
@click.option("--lr", type=float, default=0.05)
@click.option("--clip", type=float, default=5.0)
@click.option("--d", "dim", type=int, default=32)
@click.option("--h", "hidden", type=int, default=50)
@click.option("--cell", type=click.Choice([sim.LSTM, sim.VANILLA_RNN]), default=sim.LSTM)
def train(pairs_path, out_path, seed, epochs, lr, clip, dim, hidden, cell):
    """Train a similarity model on a JSON file of {text_a, text_b, label} pairs."""
    raw = _load_json(pairs_path)
    if not raw:
        _fail(EXIT_VALIDATION, "empty training set")
    seqs = []
    for item in raw:
        seqs.append(tokenize(item["text_a"]))
        seqs.append(tokenize(item["text_b"]))
    vocab = build_vocabulary(seqs, min_count=1)
    config = sim.TrainingConfig(
        learning_rate=lr, epochs=epochs, grad_clip=clip, seed=seed, d=dim, h=hidden
    )
    pairs = []
    for item, (sa, sb) in zip(raw, zip(seqs[::2], seqs[1::2])):
        try:
            pairs.append(
                sim.TrainingPair(
                    ids_a=tuple(vocab.id_for(t) for t in sa.tokens),
                    ids_b=tuple(vocab.id_for(t) for t in sb.tokens),
                    label=float(item["label"]),
                )
            )
        except ValueError as exc:
            _fail(EXIT_VALIDATION, f"bad pair: {exc}")
    model = sim.init_model(vocab, config, cell_kind=cell)
    trained, history = sim.train(model, pairs, config)
    sim.save_checkpoint(trained, out_path)
    click.echo(
        f"trained {len(pairs)} pairs for {epochs} epochs; "
        f"loss {history[0]:.4f} -> {history[-1]:.4f}; checkpoint {out_path}"
    )


@main.command("eval")
@click.option("--exam", "exam_path", required=True, type=click.Path())
@click.option("--submissions", "subs_path", required=True, type=click.Path())
@click.option("--manual", "manual_path", required=True, type=click.Path())
@click.option("--backends", default="malstm,vanilla_rnn,cosine_tf,jaccard_set")
@click.option("--model", "model_path", type=click.Path(), default=None)
@click.option("--dev-seed", type=int, default=None)
@click.option("--lm-corpus", type=click.Path(), default=None)
@click.option("--corpus-dir", type=click.Path(), default=None)
@click.option("--convention", type=click.Choice(["mean", "median", "expand"]), default="mean")
@click.option("--out", "out_path", type=click.Path(), default=None)
def eval_cmd(
    exam_path,
    subs_path,
    manual_path,
    backends,
    model_path,
    dev_seed,
    lm_corpus,
    corpus_dir,
    convention,
    out_path,
):
    """Compare similarity backends against manual grades."""
    exam, rubrics, weights, threshold = _load_exam(exam_path)
    submissions = _load_submissions(subs_path)
    if not os.path.exists(manual_path):
        _fail(EXIT_MISSING, f"file not found: {manual_path}")
    manual = load_manual_scores(manual_path)
    try:
        kinds = [BaselineKind(k.strip()) for k in backends.split(",") if k.strip()]
    except ValueError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    models = {}
    if BaselineKind.MALSTM in kinds:
        models[BaselineKind.MALSTM] = _resolve_model(
            model_path, dev_seed, rubrics, submissions
        )
    if BaselineKind.VANILLA_RNN in kinds:
        models[BaselineKind.VANILLA_RNN] = _dev_model(
            rubrics, submissions, dev_seed or 0, cell_kind=sim.VANILLA_RNN
        )
    lm = _language_model(lm_corpus, rubrics)
    corpus = load_corpus_dir(corpus_dir) if corpus_dir else build_corpus([])
    rows = compare_models(
        rubrics, submissions, manual, kinds, models, lm, corpus, weights, threshold,
        convention,
    )
    click.echo(format_comparison(rows), nl=False)
    click.echo(
        "note: the manual-score convention is reported with every error value; "
        "errors are only comparable under one convention"
    )
    if out_path:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(comparison_json(rows))


@main.group()
def corpus():
    """Reference-corpus tooling for the copying check."""


@corpus.command("build")
@click.option("--dir", "directory", required=True, type=click.Path())
@click.option("--k", type=int, default=DEFAULT_SHINGLE_SIZE)
def corpus_build(directory, k):
    """Index a directory of plain-text documents and print shingle stats."""
    if not os.path.isdir(directory):
        _fail(EXIT_MISSING, f"directory not found: {directory}")
    try:
        ref = load_corpus_dir(directory, k)
    except ValueError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    click.echo(
        f"indexed {len(ref.documents)} documents, "
        f"{len(ref.shingle_index)} distinct {k}-token shingles"
    )


@main.command()
@click.option("--data-dir", required=True, type=click.Path())
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(data_dir, config_path, host, port):
    """Run the grading HTTP service."""
    import uvicorn

    from .service.api import create_app

    config = _load_json(config_path)
    store = Store(data_dir)
    model = None
    if config.get("model_checkpoint"):
        if not os.path.exists(config["model_checkpoint"]):
            _fail(EXIT_MISSING, f"checkpoint not found: {config['model_checkpoint']}")
        model = sim.load_checkpoint(config["model_checkpoint"])
    elif config.get("dev_mode"):
        texts = [r["ideal_answer"] for e in store.exams for r in e["rubrics"]]
        seqs = [tokenize(t) for t in texts] or [tokenize("placeholder")]
        vocab = build_vocabulary(seqs, min_count=1)
        model = sim.init_model(
            vocab, sim.TrainingConfig(seed=int(config.get("dev_seed", 0)))
        )
    else:
        _fail(EXIT_MISSING, "config needs model_checkpoint or dev_mode: true")
    lm = None
    if config.get("language_corpus"):
        lm = LanguageModel.from_corpus_file(config["language_corpus"])
    ref = (
        load_corpus_dir(config["corpus_dir"])
        if config.get("corpus_dir")
        else build_corpus([])
    )
    service = GradingService(
        store,
        model=model,
        language_model=lm,
        corpus=ref,
        dev_mode=bool(config.get("dev_mode")),
    )
    app = create_app(service, config.get("tokens", {}))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
