"""Canonical on-disk formats for banks and datasets.

Field names are part of the wire contract:

* ``misconceptions.json`` — array of ``{"id", "description", "example",
  "category", "origin", "source"}``
* ``problems.jsonl`` — one object per line: ``{"id", "description",
  "tests": [...], "solutions": [...], "source"}`` (plus ``"untested": true``
  for the rare problem that legitimately ships without tests)
* ``bags.jsonl`` — one object per line: ``{"bag_id",
  "gt_misconception_id": string|null, "pairs": [{"problem_id", "code",
  "exhibits": string|null}]}``
* ``dataset.json`` — header ``{"generation_seed", "stats": {...},
  "files": {...}}`` referencing the three files above.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .model import (
    Bag,
    Dataset,
    DatasetStats,
    Misconception,
    Problem,
    ProblemCodePair,
    SolutionSet,
)

MISCONCEPTIONS_FILE = "misconceptions.json"
PROBLEMS_FILE = "problems.jsonl"
BAGS_FILE = "bags.jsonl"
DATASET_FILE = "dataset.json"


def encode_misconception(mc: Misconception) -> dict:
    return {
        "id": mc.id,
        "description": mc.description,
        "example": mc.example_code,
        "category": mc.category,
        "origin": mc.origin,
        "source": mc.source,
    }


def decode_misconception(obj: Mapping) -> Misconception:
    return Misconception(
        id=obj["id"],
        description=obj["description"],
        example_code=obj["example"],
        category=obj["category"],
        origin=obj["origin"],
        source=obj.get("source", ""),
    )


def save_misconceptions(mcs: Iterable[Misconception], path: str | Path) -> None:
    payload = [encode_misconception(mc) for mc in mcs]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_misconceptions(path: str | Path) -> dict[str, Misconception]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    mcs = [decode_misconception(obj) for obj in data]
    return {mc.id: mc for mc in mcs}


def encode_problem(problem: Problem, solutions: tuple[str, ...]) -> dict:
    obj = {
        "id": problem.id,
        "description": problem.description,
        "tests": list(problem.tests),
        "solutions": list(solutions),
        "source": problem.source,
    }
    if problem.untested:
        obj["untested"] = True
    return obj


def decode_problem(obj: Mapping) -> tuple[Problem, tuple[str, ...]]:
    problem = Problem(
        id=obj["id"],
        description=obj["description"],
        tests=tuple(obj.get("tests", ())),
        source=obj.get("source", ""),
        untested=bool(obj.get("untested", False)),
    )
    return problem, tuple(obj.get("solutions", ()))


def save_problem_bank(
    problems: Mapping[str, Problem],
    solutions: Mapping[str, SolutionSet],
    path: str | Path,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, problem in problems.items():
            sols = solutions[key].solutions if key in solutions else ()
            fh.write(json.dumps(encode_problem(problem, sols)) + "\n")


def load_problem_bank(path: str | Path) -> tuple[dict[str, Problem], dict[str, SolutionSet]]:
    problems: dict[str, Problem] = {}
    solution_sets: dict[str, SolutionSet] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            problem, sols = decode_problem(json.loads(line))
            problems[problem.id] = problem
            if sols:
                solution_sets[problem.id] = SolutionSet(problem_id=problem.id, solutions=sols)
    return problems, solution_sets


def encode_bag(bag: Bag) -> dict:
    return {
        "bag_id": bag.bag_id,
        "gt_misconception_id": bag.gt_label,
        "pairs": [
            {"problem_id": pair.problem_id, "code": pair.code, "exhibits": pair.exhibits}
            for pair in bag.pairs
        ],
    }


def decode_bag(obj: Mapping) -> Bag:
    return Bag(
        bag_id=obj["bag_id"],
        gt_label=obj.get("gt_misconception_id"),
        pairs=tuple(
            ProblemCodePair(
                problem_id=pair["problem_id"],
                code=pair["code"],
                exhibits=pair.get("exhibits"),
            )
            for pair in obj["pairs"]
        ),
    )


def save_bags(bags: Iterable[Bag], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for bag in bags:
            fh.write(json.dumps(encode_bag(bag)) + "\n")


def load_bags(path: str | Path) -> tuple[Bag, ...]:
    bags = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            bags.append(decode_bag(json.loads(line)))
    return tuple(bags)


def encode_stats(stats: DatasetStats) -> dict:
    return {
        "total_samples": stats.total_samples,
        "samples_exhibiting": stats.samples_exhibiting,
        "samples_clean": stats.samples_clean,
        "total_bags": stats.total_bags,
        "bags_with_misconception": stats.bags_with_misconception,
        "bags_correct_only": stats.bags_correct_only,
    }


def decode_stats(obj: Mapping) -> DatasetStats:
    return DatasetStats(
        total_samples=obj["total_samples"],
        samples_exhibiting=obj["samples_exhibiting"],
        samples_clean=obj["samples_clean"],
        total_bags=obj["total_bags"],
        bags_with_misconception=obj["bags_with_misconception"],
        bags_correct_only=obj["bags_correct_only"],
    )


def save_dataset(
    dataset: Dataset,
    out_dir: str | Path,
    solutions: Optional[Mapping[str, SolutionSet]] = None,
) -> Path:
    """Write the four canonical files into ``out_dir`` and return the path
    of the dataset header."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_misconceptions(dataset.misconceptions.values(), out / MISCONCEPTIONS_FILE)
    save_problem_bank(dataset.problems, solutions or {}, out / PROBLEMS_FILE)
    save_bags(dataset.bags, out / BAGS_FILE)
    header = {
        "generation_seed": dataset.generation_seed,
        "stats": encode_stats(dataset.stats),
        "files": {
            "misconceptions": MISCONCEPTIONS_FILE,
            "problems": PROBLEMS_FILE,
            "bags": BAGS_FILE,
        },
    }
    header_path = out / DATASET_FILE
    header_path.write_text(json.dumps(header, indent=2) + "\n", encoding="utf-8")
    return header_path


def load_dataset(path: str | Path) -> Dataset:
    """Load a dataset from its header file or from a directory containing
    one."""
    p = Path(path)
    if p.is_dir():
        p = p / DATASET_FILE
    header = json.loads(p.read_text(encoding="utf-8"))
    base = p.parent
    files = header.get("files", {})
    misconceptions = load_misconceptions(base / files.get("misconceptions", MISCONCEPTIONS_FILE))
    problems, _ = load_problem_bank(base / files.get("problems", PROBLEMS_FILE))
    bags = load_bags(base / files.get("bags", BAGS_FILE))
    return Dataset(
        misconceptions=misconceptions,
        problems=problems,
        bags=bags,
        generation_seed=header["generation_seed"],
        stats=decode_stats(header["stats"]),
    )
