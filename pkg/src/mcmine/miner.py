"""Mining pipelines: per-pair mining with count aggregation, and whole-bag
mining, with strict tagged-output parsing."""

from __future__ import annotations

import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import GatewayError, ParseError
from .gateway import Gateway, load_template, render, user
from .model import Bag, Dataset, MiningPrediction, ModelConfig, Problem, ProblemCodePair

log = logging.getLogger(__name__)

_NONE_BLOCK = re.compile(r"<misconception>\s*NONE\s*</misconception>")
_FOUND_BLOCK = re.compile(
    r"<misconception>\s*"
    r"<description>(.*?)</description>\s*"
    r"<explanation>(.*?)</explanation>\s*"
    r"</misconception>",
    re.DOTALL,
)

EquivFn = Callable[[str, str], bool]


@lru_cache(maxsize=None)
def _template(name: str):
    return load_template(name)


def parse_miner_output(text: str) -> MiningPrediction:
    """First well-formed <misconception> block: either the NONE form or a
    description/explanation pair."""
    none_match = _NONE_BLOCK.search(text)
    found_match = _FOUND_BLOCK.search(text)
    if none_match and (not found_match or none_match.start() < found_match.start()):
        return MiningPrediction.none_found()
    if found_match:
        description = found_match.group(1).strip()
        if not description:
            raise ParseError("miner output has an empty <description>")
        return MiningPrediction.found(description, found_match.group(2).strip())
    raise ParseError("no well-formed <misconception> block in completion")


def normalize_description(text: str) -> str:
    """Normalization behind the default equivalence: collapse whitespace,
    drop trailing sentence punctuation, casefold."""
    collapsed = re.sub(r"\s+", " ", text).strip()
    collapsed = re.sub(r"[.!?]+$", "", collapsed)
    return collapsed.casefold()


def exact_equivalence(a: str, b: str) -> bool:
    return normalize_description(a) == normalize_description(b)


def judge_equivalence(cfg: ModelConfig, gateway: Gateway, code_samples: str = "(not provided)") -> EquivFn:
    """Semantic equivalence for live runs: ask the matching judge whether two
    free-text descriptions capture the same misunderstanding. Parse failures
    degrade to not-equivalent. Falls back cheaply when the texts already
    normalize equal."""
    from .evaluate import parse_match_answer

    def equiv(a: str, b: str) -> bool:
        if exact_equivalence(a, b):
            return True
        prompt = render(
            _template("semantic_match"),
            {"ground_truth": a, "predicted_misconception": b, "code_samples": code_samples},
        )
        try:
            return parse_match_answer(gateway.complete(cfg, (user(prompt),)).text)
        except ParseError as exc:
            log.warning("equivalence judge parse failure: %s; treating as distinct", exc)
            return False

    return equiv


@dataclass(frozen=True)
class Cluster:
    representative: MiningPrediction
    first_index: int
    indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.indices)


def cluster_predictions(
    preds: Sequence[MiningPrediction],
    equiv: EquivFn = exact_equivalence,
) -> list[Cluster]:
    """Greedy clustering in pair order: each found prediction joins the
    first cluster whose representative it matches."""
    clusters: list[tuple[MiningPrediction, int, list[int]]] = []
    for idx, pred in enumerate(preds):
        if not pred.is_found:
            continue
        for rep, first, members in clusters:
            if equiv(rep.description, pred.description):
                members.append(idx)
                break
        else:
            clusters.append((pred, idx, [idx]))
    return [
        Cluster(representative=rep, first_index=first, indices=tuple(members))
        for rep, first, members in clusters
    ]


def aggregate_single(
    preds: Sequence[MiningPrediction],
    equiv: EquivFn = exact_equivalence,
) -> MiningPrediction:
    """Majority vote over found predictions; ties break to the
    earliest-seen cluster; all-none aggregates to none."""
    clusters = cluster_predictions(preds, equiv)
    if not clusters:
        return MiningPrediction.none_found()
    best = max(clusters, key=lambda c: (c.size, -c.first_index))
    return best.representative


def mine_single(
    pair: ProblemCodePair,
    problem: Problem,
    cfg: ModelConfig,
    gateway: Gateway,
) -> MiningPrediction:
    return parse_miner_output(_mine_single_raw(pair, problem, cfg, gateway))


def _mine_single_raw(
    pair: ProblemCodePair,
    problem: Problem,
    cfg: ModelConfig,
    gateway: Gateway,
) -> str:
    prompt = render(
        _template("miner_single"),
        {"problem_description": problem.description, "student_code": pair.code},
    )
    return gateway.complete(cfg, (user(prompt),)).text


def format_bag_sections(bag: Bag, problems: Mapping[str, Problem]) -> str:
    """The wire layout for whole-bag prompts: numbered sample sections in
    bag order."""
    sections = []
    for i, pair in enumerate(bag.pairs, 1):
        sections.append(
            f"Sample {i} —\n"
            f"Problem Description: {problems[pair.problem_id].description}\n\n"
            f"Student Code:\n{pair.code}"
        )
    return "\n\n".join(sections)


def format_code_sections(bag: Bag) -> str:
    """Code-only sample sections, used where prompts take just the code."""
    sections = [f"Sample {i} —\n{pair.code}" for i, pair in enumerate(bag.pairs, 1)]
    return "\n\n".join(sections)


def mine_multi(
    bag: Bag,
    problems: Mapping[str, Problem],
    cfg: ModelConfig,
    gateway: Gateway,
) -> MiningPrediction:
    return parse_miner_output(_mine_multi_raw(bag, problems, cfg, gateway))


def _mine_multi_raw(
    bag: Bag,
    problems: Mapping[str, Problem],
    cfg: ModelConfig,
    gateway: Gateway,
) -> str:
    prompt = render(_template("miner_multi"), {"code_samples": format_bag_sections(bag, problems)})
    return gateway.complete(cfg, (user(prompt),)).text


def _encode_prediction(pred: MiningPrediction) -> Optional[dict]:
    if not pred.is_found:
        return None
    return {"description": pred.description, "explanation": pred.explanation}


def decode_prediction(obj: Optional[Mapping]) -> MiningPrediction:
    if obj is None:
        return MiningPrediction.none_found()
    return MiningPrediction.found(obj["description"], obj.get("explanation", ""))


def mine_bag(
    bag: Bag,
    problems: Mapping[str, Problem],
    mode: str,
    cfg: ModelConfig,
    gateway: Gateway,
    model_id: str,
    equiv: EquivFn = exact_equivalence,
) -> dict:
    """Run one bag through the requested pipeline and produce a prediction
    record. Per-pair gateway or parse failures degrade to a none prediction
    for that pair and are flagged in the record's error list."""
    if mode not in ("single", "multi"):
        raise ValueError(f"mode must be 'single' or 'multi', got {mode!r}")

    errors: list[str] = []
    if mode == "multi":
        per_pair = None
        try:
            raw = _mine_multi_raw(bag, problems, cfg, gateway)
            raws = [raw]
            prediction = parse_miner_output(raw)
        except GatewayError as exc:
            log.warning("bag %s: %s; treating as none", bag.bag_id, exc)
            raws = [None]
            prediction = MiningPrediction.none_found()
            errors.append(str(exc))
        except ParseError as exc:
            log.warning("bag %s: %s; treating as none", bag.bag_id, exc)
            prediction = MiningPrediction.none_found()
            errors.append(str(exc))
    else:
        preds: list[MiningPrediction] = []
        raws = []
        for i, pair in enumerate(bag.pairs):
            raw = None
            try:
                raw = _mine_single_raw(pair, problems[pair.problem_id], cfg, gateway)
                pred = parse_miner_output(raw)
            except (GatewayError, ParseError) as exc:
                log.warning("bag %s pair %d: %s; treating as none", bag.bag_id, i, exc)
                pred = MiningPrediction.none_found()
                errors.append(f"pair {i}: {exc}")
            raws.append(raw)
            preds.append(pred)
        prediction = aggregate_single(preds, equiv)
        per_pair = [_encode_prediction(p) for p in preds]

    return {
        "bag_id": bag.bag_id,
        "mode": mode,
        "prediction": _encode_prediction(prediction),
        "per_pair": per_pair,
        "raw": raws,
        "model": model_id,
        "errors": errors,
    }


def run_mining(
    dataset: Dataset,
    mode: str,
    cfg: ModelConfig,
    gateway: Gateway,
    model_id: str,
    equiv: EquivFn = exact_equivalence,
    workers: int = 1,
) -> list[dict]:
    def _worker(bag: Bag) -> dict:
        return mine_bag(bag, dataset.problems, mode, cfg, gateway, model_id, equiv)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_worker, dataset.bags))
    return [_worker(bag) for bag in dataset.bags]


def save_predictions(records: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")


def load_predictions(path: str | Path) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records
