"""Scoring of mining predictions against ground truth: semantic matching,
novelty validation, the dual true-positive/false-negative counting rule, and
per-slice metric reporting."""

from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .errors import EmptyInput, ParseError
from .gateway import Gateway, load_template, render, user
from .inject import judge_exhibits
from .miner import decode_prediction, format_code_sections
from .model import Bag, Dataset, Misconception, MiningPrediction, ModelConfig

log = logging.getLogger(__name__)

_MATCH_BLOCK = re.compile(r"<evaluation>\s*<match>(true|false)</match>\s*</evaluation>")

NO_MISCONCEPTION = "NO MISCONCEPTION"

SLICE_MISCONCEPTION = "misconception_bags"
SLICE_CORRECT_ONLY = "correct_only_bags"


@lru_cache(maxsize=None)
def _template(name: str):
    return load_template(name)


@dataclass(frozen=True)
class Contributions:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "Contributions") -> "Contributions":
        return Contributions(
            tp=self.tp + other.tp,
            tn=self.tn + other.tn,
            fp=self.fp + other.fp,
            fn=self.fn + other.fn,
        )

    @property
    def events(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class EvalRecord:
    bag_id: str
    gt: Optional[str]
    prediction: MiningPrediction
    matched: bool
    novel_validated: bool
    contributions: Contributions


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    accuracy: float
    accuracy_bag_level: float
    counts: Contributions
    slices: Mapping[str, "Metrics"] = field(default_factory=dict)
    undefined: tuple[str, ...] = ()


def parse_match_answer(text: str) -> bool:
    match = _MATCH_BLOCK.search(text)
    if match is None:
        raise ParseError("no well-formed <evaluation> block in completion")
    return match.group(1) == "true"


def semantic_match(
    gt: Optional[Misconception],
    pred: MiningPrediction,
    bag: Bag,
    cfg: ModelConfig,
    gateway: Gateway,
) -> bool:
    """Judge whether the prediction captures the same misunderstanding as
    the ground truth. The degenerate cases are decided without any model
    call: no-label bags match exactly the none prediction, and a none
    prediction never matches a labeled bag."""
    if gt is None:
        return not pred.is_found
    if not pred.is_found:
        return False
    prompt = render(
        _template("semantic_match"),
        {
            "ground_truth": gt.description,
            "predicted_misconception": pred.description,
            "code_samples": format_code_sections(bag),
        },
    )
    return parse_match_answer(gateway.complete(cfg, (user(prompt),)).text)


def prediction_as_misconception(pred: MiningPrediction) -> Misconception:
    """Wrap a found prediction so the injection judge can assess it; the
    explanation stands in for the usual worked example."""
    return Misconception(
        id="predicted",
        description=pred.description or "",
        example_code=pred.explanation or "(none)",
        category="harmful",
        origin="artificial",
        source="miner-prediction",
    )


def novel_validation_threshold(bag_size: int) -> int:
    return math.ceil(bag_size / 2)


def validate_novel(
    pred: MiningPrediction,
    bag: Bag,
    cfg: ModelConfig,
    gateway: Gateway,
    threshold: Optional[int] = None,
) -> bool:
    """A non-matching found prediction is a validated novel discovery iff
    the judge confirms it on a majority of the bag's pairs. Judge parse
    failures count against validation."""
    if not pred.is_found:
        return False
    candidate = prediction_as_misconception(pred)
    needed = threshold if threshold is not None else novel_validation_threshold(len(bag.pairs))
    confirmed = 0
    for pair in bag.pairs:
        try:
            verdict = judge_exhibits(candidate, pair.code, cfg, gateway)
        except ParseError as exc:
            log.warning("bag %s novel validation: %s; counting as N", bag.bag_id, exc)
            continue
        if verdict.exhibits:
            confirmed += 1
    return confirmed >= needed


def score_bag(
    gt_present: bool,
    pred: MiningPrediction,
    matched: bool,
    novel_validated: bool,
) -> Contributions:
    """The confusion-contribution table. Total over its whole flag domain:
    exactly one row fires for every combination.

    - labeled bag, matching prediction        -> tp
    - unlabeled bag, none prediction          -> tn
    - labeled bag, none prediction            -> fn
    - labeled bag, validated novel prediction -> tp and fn (dual count)
    - unlabeled bag, validated novel          -> tp
    - any other found prediction              -> fp
    """
    if not pred.is_found:
        return Contributions(fn=1) if gt_present else Contributions(tn=1)
    if gt_present:
        if matched:
            return Contributions(tp=1)
        if novel_validated:
            return Contributions(tp=1, fn=1)
        return Contributions(fp=1)
    if novel_validated:
        return Contributions(tp=1)
    return Contributions(fp=1)


def evaluate_bag(
    bag: Bag,
    pred: MiningPrediction,
    dataset: Dataset,
    judge_cfg: ModelConfig,
    gateway: Gateway,
    threshold: Optional[int] = None,
) -> EvalRecord:
    gt = dataset.misconceptions[bag.gt_label] if bag.gt_label is not None else None
    matched = semantic_match(gt, pred, bag, judge_cfg, gateway)
    novel_validated = False
    if pred.is_found and not matched:
        novel_validated = validate_novel(pred, bag, judge_cfg, gateway, threshold=threshold)
    return EvalRecord(
        bag_id=bag.bag_id,
        gt=bag.gt_label,
        prediction=pred,
        matched=matched,
        novel_validated=novel_validated,
        contributions=score_bag(gt is not None, pred, matched, novel_validated),
    )


def evaluate_run(
    dataset: Dataset,
    prediction_records: Sequence[Mapping],
    judge_cfg: ModelConfig,
    gateway: Gateway,
    threshold: Optional[int] = None,
) -> list[EvalRecord]:
    bags = {bag.bag_id: bag for bag in dataset.bags}
    records = []
    for record in prediction_records:
        bag_id = record["bag_id"]
        if bag_id not in bags:
            raise KeyError(f"prediction references unknown bag {bag_id!r}")
        pred = decode_prediction(record.get("prediction"))
        records.append(evaluate_bag(bags[bag_id], pred, dataset, judge_cfg, gateway, threshold))
    return records


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _metrics_over(records: Sequence[EvalRecord], with_slices: bool) -> Metrics:
    counts = Contributions()
    for record in records:
        counts = counts + record.contributions

    undefined: list[str] = []

    def _ratio(num: int, den: int, name: str) -> float:
        if den == 0:
            undefined.append(name)
            return 0.0
        return num / den

    precision = _ratio(counts.tp, counts.tp + counts.fp, "precision")
    recall = _ratio(counts.tp, counts.tp + counts.fn, "recall")
    f1 = f1_score(precision, recall)
    if precision + recall == 0:
        undefined.append("f1")
    accuracy = _ratio(counts.tp + counts.tn, counts.events, "accuracy")
    correct_bags = sum(1 for r in records if r.contributions.tp or r.contributions.tn)
    accuracy_bag_level = _ratio(correct_bags, len(records), "accuracy_bag_level")

    slices: dict[str, Metrics] = {}
    if with_slices:
        slices[SLICE_MISCONCEPTION] = _metrics_over(
            [r for r in records if r.gt is not None], with_slices=False
        )
        slices[SLICE_CORRECT_ONLY] = _metrics_over(
            [r for r in records if r.gt is None], with_slices=False
        )

    return Metrics(
        precision=precision,
        recall=recall,
        f1=f1,
        accuracy=accuracy,
        accuracy_bag_level=accuracy_bag_level,
        counts=counts,
        slices=slices,
        undefined=tuple(undefined),
    )


def compute_metrics(records: Sequence[EvalRecord]) -> Metrics:
    """Precision, recall, F1, and accuracy over the contribution totals,
    with per-slice views for labeled and correct-only bags. Zero
    denominators yield 0.0 and are flagged in ``undefined`` so that empty
    slices still render."""
    if not records:
        raise EmptyInput("no evaluation records")
    return _metrics_over(records, with_slices=True)


def _encode_metrics(m: Metrics) -> dict:
    return {
        "counts": {"tp": m.counts.tp, "tn": m.counts.tn, "fp": m.counts.fp, "fn": m.counts.fn},
        "precision": m.precision,
        "recall": m.recall,
        "f1": m.f1,
        "accuracy": m.accuracy,
        "accuracy_bag_level": m.accuracy_bag_level,
    }


def build_report(records: Sequence[EvalRecord]) -> dict:
    metrics = compute_metrics(records)
    report = _encode_metrics(metrics)
    report["slices"] = {name: _encode_metrics(sub) for name, sub in metrics.slices.items()}
    report["novel_true_positives"] = [
        {
            "bag_id": r.bag_id,
            "description": r.prediction.description,
            "correct_only": r.gt is None,
        }
        for r in records
        if r.novel_validated
    ]
    return report


def save_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
