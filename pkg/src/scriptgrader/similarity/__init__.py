"""Siamese Manhattan similarity scorer (S4) and its training machinery."""

from .backend import BACKEND
from .model import (
    LSTM,
    VANILLA_RNN,
    CheckpointError,
    DimensionMismatch,
    EmbeddingTable,
    EmptyTrainingSet,
    RecurrentParameters,
    SimilarityModel,
    TrainingConfig,
    TrainingPair,
    encode_sequence,
    grad_check,
    init_model,
    load_checkpoint,
    loss,
    manhattan_similarity,
    predict_pair,
    save_checkpoint,
    score_similarity,
    train,
)

__all__ = [
    "BACKEND",
    "LSTM",
    "VANILLA_RNN",
    "CheckpointError",
    "DimensionMismatch",
    "EmbeddingTable",
    "EmptyTrainingSet",
    "RecurrentParameters",
    "SimilarityModel",
    "TrainingConfig",
    "TrainingPair",
    "encode_sequence",
    "grad_check",
    "init_model",
    "load_checkpoint",
    "loss",
    "manhattan_similarity",
    "predict_pair",
    "save_checkpoint",
    "score_similarity",
    "train",
]
