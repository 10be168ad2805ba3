"""Siamese recurrent similarity scorer.

Two weight-shared encoder legs (LSTM or vanilla RNN) embed the ideal answer
and the student answer; similarity is exp(-L1 distance) between the final
hidden states, so identical texts score exactly 1.0 and the measure is
symmetric by construction.

Training is plain per-pair gradient descent with global-norm clipping,
deterministic for a fixed seed. ``grad_check`` validates the analytic
backward pass against central finite differences.
"""
from __future__ import annotations

import io
import json
import struct
from dataclasses import dataclass, field, replace

import numpy as np

from ..textpipe import Vocabulary, load_vocabulary, save_vocabulary, tokenize, encode
from .backend import kernels

CHECKPOINT_MAGIC = b"MALSTM01"

LSTM = "lstm"
VANILLA_RNN = "vanilla_rnn"


class DimensionMismatch(ValueError):
    pass


class EmptyTrainingSet(ValueError):
    pass


class CheckpointError(ValueError):
    pass


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.05
    epochs: int = 30
    grad_clip: float = 5.0
    seed: int = 0
    d: int = 32
    h: int = 50

    def __post_init__(self):
        if self.learning_rate <= 0 or self.epochs < 1 or self.grad_clip <= 0:
            raise ValueError("learning_rate, epochs and grad_clip must be positive")
        if self.d < 1 or self.h < 1:
            raise ValueError("embedding and hidden dimensions must be positive")


@dataclass(frozen=True)
class TrainingPair:
    ids_a: tuple[int, ...]
    ids_b: tuple[int, ...]
    label: float

    def __post_init__(self):
        if not 0.0 <= self.label <= 1.0:
            raise ValueError(f"label out of [0, 1]: {self.label}")
        if not self.ids_a and not self.ids_b:
            raise ValueError("at least one sequence must be nonempty")


@dataclass
class EmbeddingTable:
    """(V+1) x d table; row 0 is the OOV/padding row."""

    vectors: np.ndarray

    @property
    def d(self) -> int:
        return self.vectors.shape[1]


@dataclass
class RecurrentParameters:
    """Stacked recurrent weights shared by both Siamese legs.

    For the LSTM, ``wx``/``wh``/``b`` stack the four gates as
    [input; forget; output; candidate] blocks, each ``h`` rows tall.
    For the vanilla RNN they are the plain (h, d), (h, h), (h,) arrays.
    """

    cell_kind: str
    wx: np.ndarray
    wh: np.ndarray
    b: np.ndarray

    @property
    def h(self) -> int:
        return self.wh.shape[1]

    def gate_slice(self, gate: str) -> slice:
        order = {"i": 0, "f": 1, "o": 2, "c": 3}
        if self.cell_kind != LSTM:
            raise ValueError("gate slices only exist for the LSTM cell")
        k = order[gate]
        return slice(k * self.h, (k + 1) * self.h)


@dataclass
class SimilarityModel:
    vocabulary: Vocabulary
    embeddings: EmbeddingTable
    params: RecurrentParameters
    config: TrainingConfig

    def clone(self) -> "SimilarityModel":
        return SimilarityModel(
            vocabulary=self.vocabulary,
            embeddings=EmbeddingTable(self.embeddings.vectors.copy()),
            params=RecurrentParameters(
                cell_kind=self.params.cell_kind,
                wx=self.params.wx.copy(),
                wh=self.params.wh.copy(),
                b=self.params.b.copy(),
            ),
            config=self.config,
        )


def init_model(
    vocab: Vocabulary, config: TrainingConfig, cell_kind: str = LSTM
) -> SimilarityModel:
    """Deterministically initialize embeddings and weights from the seed.

    All entries are uniform on [-0.1, 0.1]; the LSTM forget-gate bias is
    then set to 1.0 to keep early gradients alive.
    """
    if vocab.size < 1:
        raise ValueError("vocabulary must contain at least one term")
    if cell_kind not in (LSTM, VANILLA_RNN):
        raise ValueError(f"unknown cell kind: {cell_kind}")
    rng = np.random.default_rng(config.seed)
    d, h = config.d, config.h
    gates = 4 if cell_kind == LSTM else 1
    emb = rng.uniform(-0.1, 0.1, size=(vocab.size + 1, d))
    wx = rng.uniform(-0.1, 0.1, size=(gates * h, d))
    wh = rng.uniform(-0.1, 0.1, size=(gates * h, h))
    b = rng.uniform(-0.1, 0.1, size=gates * h)
    params = RecurrentParameters(cell_kind=cell_kind, wx=wx, wh=wh, b=b)
    if cell_kind == LSTM:
        b[params.gate_slice("f")] = 1.0
    return SimilarityModel(
        vocabulary=vocab, embeddings=EmbeddingTable(emb), params=params, config=config
    )


def _embed(model: SimilarityModel, ids) -> np.ndarray:
    ids = np.asarray(ids, dtype=np.intp)
    if ids.size == 0:
        return np.zeros((0, model.embeddings.d))
    return np.ascontiguousarray(model.embeddings.vectors[ids])


def _forward(model: SimilarityModel, ids):
    x = _embed(model, ids)
    p = model.params
    if p.cell_kind == LSTM:
        return x, kernels.lstm_forward(x, p.wx, p.wh, p.b)
    return x, kernels.rnn_forward(x, p.wx, p.wh, p.b)


def encode_sequence(model: SimilarityModel, ids) -> np.ndarray:
    """Final hidden state for an id sequence; empty input gives the zero vector."""
    _, (final, _) = _forward(model, ids)
    return final


def manhattan_similarity(h_a: np.ndarray, h_b: np.ndarray) -> float:
    """exp(-L1 distance); lands in (0, 1] for finite inputs."""
    h_a = np.asarray(h_a, dtype=float)
    h_b = np.asarray(h_b, dtype=float)
    if h_a.shape != h_b.shape:
        raise DimensionMismatch(f"{h_a.shape} vs {h_b.shape}")
    return float(np.exp(-np.abs(h_a - h_b).sum()))


def score_similarity(model: SimilarityModel, ideal: str, answer: str) -> float:
    """S4: similarity of the two texts under the shared encoder."""
    ids_a = encode(tokenize(ideal), model.vocabulary)
    ids_b = encode(tokenize(answer), model.vocabulary)
    return manhattan_similarity(
        encode_sequence(model, ids_a), encode_sequence(model, ids_b)
    )


def predict_pair(model: SimilarityModel, pair: TrainingPair) -> float:
    return manhattan_similarity(
        encode_sequence(model, pair.ids_a), encode_sequence(model, pair.ids_b)
    )


def loss(model: SimilarityModel, pair: TrainingPair) -> float:
    """Squared error between predicted similarity and the target label."""
    g = predict_pair(model, pair)
    return (g - pair.label) ** 2


def _pair_gradients(model: SimilarityModel, pair: TrainingPair):
    """Loss and analytic gradients for one pair.

    Embedding gradients come back as a dense (V+1, d) array; only rows
    touched by the pair are nonzero.
    """
    p = model.params
    xa, (ha, cache_a) = _forward(model, pair.ids_a)
    xb, (hb, cache_b) = _forward(model, pair.ids_b)
    diff = ha - hb
    g = float(np.exp(-np.abs(diff).sum()))
    pair_loss = (g - pair.label) ** 2
    dg = 2.0 * (g - pair.label)
    sign = np.sign(diff)
    dha = dg * (-g) * sign
    dhb = dg * g * sign

    backward = kernels.lstm_backward if p.cell_kind == LSTM else kernels.rnn_backward
    dwx = np.zeros_like(p.wx)
    dwh = np.zeros_like(p.wh)
    db = np.zeros_like(p.b)
    demb = np.zeros_like(model.embeddings.vectors)
    for ids, x, cache, dh in ((pair.ids_a, xa, cache_a, dha), (pair.ids_b, xb, cache_b, dhb)):
        if len(ids) == 0:
            continue
        dx, dwx_leg, dwh_leg, db_leg = backward(x, p.wx, p.wh, p.b, cache, dh)
        dwx += dwx_leg
        dwh += dwh_leg
        db += db_leg
        np.add.at(demb, np.asarray(ids, dtype=np.intp), dx)
    return pair_loss, g, dwx, dwh, db, demb


def _clip_global(arrays, max_norm: float) -> float:
    norm = float(np.sqrt(sum(float(np.sum(a * a)) for a in arrays)))
    if norm > max_norm and norm > 0:
        scale = max_norm / norm
        for a in arrays:
            a *= scale
    return norm


def train(
    model: SimilarityModel, pairs: list[TrainingPair], config: TrainingConfig
) -> tuple[SimilarityModel, list[float]]:
    """Per-pair gradient descent over seed-shuffled epochs.

    Returns a new trained model (the input is untouched) and the mean
    per-pair loss for each epoch, evaluated as pairs are visited.
    """
    if not pairs:
        raise EmptyTrainingSet("no training pairs")
    trained = model.clone()
    p = trained.params
    emb = trained.embeddings.vectors
    rng = np.random.default_rng(config.seed)
    history: list[float] = []
    for _ in range(config.epochs):
        order = rng.permutation(len(pairs))
        total = 0.0
        for idx in order:
            pair = pairs[idx]
            pair_loss, _, dwx, dwh, db, demb = _pair_gradients(trained, pair)
            total += pair_loss
            _clip_global([dwx, dwh, db, demb], config.grad_clip)
            p.wx -= config.learning_rate * dwx
            p.wh -= config.learning_rate * dwh
            p.b -= config.learning_rate * db
            emb -= config.learning_rate * demb
        history.append(total / len(pairs))
    return trained, history


def grad_check(
    model: SimilarityModel, pair: TrainingPair, epsilon: float = 1e-5
) -> float:
    """Max relative deviation between analytic and central-difference gradients.

    Samples a deterministic set of parameters covering every weight matrix,
    the bias, and the embedding rows the pair touches.
    """
    work = model.clone()
    _, _, dwx, dwh, db, demb = _pair_gradients(work, pair)
    rng = np.random.default_rng(12345)

    touched_rows = sorted(set(pair.ids_a) | set(pair.ids_b))
    targets: list[tuple[np.ndarray, tuple, float]] = []

    def sample(array: np.ndarray, grad: np.ndarray, n: int, rows=None):
        flat_choices = []
        if rows is None:
            total = array.size
            picks = rng.choice(total, size=min(n, total), replace=False)
            flat_choices = [np.unravel_index(int(i), array.shape) for i in picks]
        else:
            for _ in range(n):
                r = rows[int(rng.integers(len(rows)))]
                c = int(rng.integers(array.shape[1]))
                flat_choices.append((r, c))
        for idx in flat_choices:
            targets.append((array, idx, float(grad[idx])))

    p = work.params
    sample(p.wx, dwx, 8)
    sample(p.wh, dwh, 8)
    sample(p.b, db, 4)
    if touched_rows:
        sample(work.embeddings.vectors, demb, 8, rows=touched_rows)

    worst = 0.0
    for array, idx, analytic in targets:
        original = array[idx]
        array[idx] = original + epsilon
        up = loss(work, pair)
        array[idx] = original - epsilon
        down = loss(work, pair)
        array[idx] = original
        numeric = (up - down) / (2.0 * epsilon)
        denom = max(abs(analytic), abs(numeric), 1e-8)
        worst = max(worst, abs(analytic - numeric) / denom)
    return worst


def save_checkpoint(model: SimilarityModel, path) -> None:
    """Self-describing binary checkpoint: magic, JSON header, vocabulary,
    then the parameter arrays row-major."""
    vocab_text = save_vocabulary(model.vocabulary).encode("utf-8")
    arrays = [
        ("embeddings", model.embeddings.vectors),
        ("wx", model.params.wx),
        ("wh", model.params.wh),
        ("b", model.params.b),
    ]
    header = {
        "cell_kind": model.params.cell_kind,
        "d": model.config.d,
        "h": model.config.h,
        "seed": model.config.seed,
        "learning_rate": model.config.learning_rate,
        "epochs": model.config.epochs,
        "grad_clip": model.config.grad_clip,
        "vocab_bytes": len(vocab_text),
        "arrays": [{"name": n, "shape": list(a.shape)} for n, a in arrays],
    }
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as f:
        f.write(CHECKPOINT_MAGIC)
        f.write(struct.pack("<I", len(header_bytes)))
        f.write(header_bytes)
        f.write(vocab_text)
        for _, a in arrays:
            f.write(np.ascontiguousarray(a, dtype=np.float64).tobytes())


def load_checkpoint(path) -> SimilarityModel:
    with open(path, "rb") as f:
        magic = f.read(len(CHECKPOINT_MAGIC))
        if magic != CHECKPOINT_MAGIC:
            raise CheckpointError("bad magic header")
        (header_len,) = struct.unpack("<I", f.read(4))
        header = json.loads(f.read(header_len).decode("utf-8"))
        vocab = load_vocabulary(f.read(header["vocab_bytes"]).decode("utf-8"))
        config = TrainingConfig(
            learning_rate=header["learning_rate"],
            epochs=header["epochs"],
            grad_clip=header["grad_clip"],
            seed=header["seed"],
            d=header["d"],
            h=header["h"],
        )
        cell_kind = header["cell_kind"]
        gates = 4 if cell_kind == LSTM else 1
        expected = {
            "embeddings": (vocab.size + 1, config.d),
            "wx": (gates * config.h, config.d),
            "wh": (gates * config.h, config.h),
            "b": (gates * config.h,),
        }
        loaded: dict[str, np.ndarray] = {}
        for spec in header["arrays"]:
            shape = tuple(spec["shape"])
            if shape != expected.get(spec["name"]):
                raise CheckpointError(
                    f"shape mismatch for {spec['name']}: {shape} != {expected.get(spec['name'])}"
                )
            count = int(np.prod(shape)) if shape else 1
            data = f.read(count * 8)
            if len(data) != count * 8:
                raise CheckpointError("truncated checkpoint")
            loaded[spec["name"]] = np.frombuffer(data, dtype=np.float64).reshape(shape).copy()
    if set(loaded) != set(expected):
        raise CheckpointError(f"missing arrays: {set(expected) - set(loaded)}")
    params = RecurrentParameters(
        cell_kind=cell_kind, wx=loaded["wx"], wh=loaded["wh"], b=loaded["b"]
    )
    return SimilarityModel(
        vocabulary=vocab,
        embeddings=EmbeddingTable(loaded["embeddings"]),
        params=params,
        config=config,
    )
