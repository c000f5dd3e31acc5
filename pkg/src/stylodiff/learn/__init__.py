from .chunk import CHUNK_SIZE, ChunkError, chunk_predict, split_chunks, vote
from .cv import (CLASSIFIER_KINDS, FEATURE_KINDS, Dataset, LearnError,
                 TrainedModel, cross_validate, stratified_folds, train)
from .forest import Forest
from .linear import LinearModel, Scaler
from .metrics import EvalReport, metrics, reports_to_tsv

__all__ = [
    "CHUNK_SIZE", "CLASSIFIER_KINDS", "FEATURE_KINDS",
    "ChunkError", "Dataset", "EvalReport", "Forest", "LearnError",
    "LinearModel", "Scaler", "TrainedModel",
    "chunk_predict", "cross_validate", "metrics", "reports_to_tsv",
    "split_chunks", "stratified_folds", "train", "vote",
]
