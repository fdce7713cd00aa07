"""Toolkit for synthesizing benchmarks of student code exhibiting
programming misconceptions and for mining misconceptions back out of bags
of problem-code pairs with LLM pipelines."""

from .model import (
    Bag,
    Dataset,
    DatasetStats,
    JudgeVerdict,
    MiningPrediction,
    Misconception,
    ModelConfig,
    Problem,
    ProblemCodePair,
    Reasoning,
    SolutionSet,
    dataset_stats,
    validate_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "Bag",
    "Dataset",
    "DatasetStats",
    "JudgeVerdict",
    "MiningPrediction",
    "Misconception",
    "ModelConfig",
    "Problem",
    "ProblemCodePair",
    "Reasoning",
    "SolutionSet",
    "dataset_stats",
    "validate_dataset",
    "__version__",
]
