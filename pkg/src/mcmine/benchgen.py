"""Benchmark dataset generation: simulate students, inject their
misconception into sampled correct solutions, and assemble labeled bags plus
correct-only negative bags.

Generation is deterministic for a given seed and worker count independent:
every bag derives its own child seed from (master seed, bag index), so any
parallel schedule assembles the identical dataset.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import subprocess
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence

from .errors import GatewayError, InsufficientProblems, ParseError
from .inject import INJECTED, InjectionOutcome
from .model import (
    Bag,
    Dataset,
    Misconception,
    Problem,
    ProblemCodePair,
    SolutionSet,
    dataset_stats,
)

log = logging.getLogger(__name__)

SELECTION_MODES = ("round_robin", "uniform_random")

Injector = Callable[[Problem, str, Misconception], InjectionOutcome]


@dataclass(frozen=True)
class GenConfig:
    num_bags: int
    bag_size_min: int = 4
    bag_size_max: int = 8
    correct_only_fraction: float = 0.177
    seed: int = 0
    misconception_selection: str = "round_robin"
    problem_filter: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.num_bags < 1:
            raise ValueError("num_bags must be at least 1")
        if not 1 <= self.bag_size_min <= self.bag_size_max:
            raise ValueError("bag size bounds must satisfy 1 <= min <= max")
        if not 0.0 <= self.correct_only_fraction <= 1.0:
            raise ValueError("correct_only_fraction must be in [0, 1]")
        if self.misconception_selection not in SELECTION_MODES:
            raise ValueError(f"misconception_selection must be one of {SELECTION_MODES}")
        if self.problem_filter is not None:
            object.__setattr__(self, "problem_filter", tuple(self.problem_filter))


def load_gen_config(path: str | Path) -> GenConfig:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    known = {f for f in GenConfig.__dataclass_fields__}
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown generation config fields: {sorted(unknown)}")
    if "problem_filter" in obj and obj["problem_filter"] is not None:
        obj["problem_filter"] = tuple(obj["problem_filter"])
    return GenConfig(**obj)


@dataclass(frozen=True)
class BagFailure:
    bag_id: str
    error: str


@dataclass(frozen=True)
class GenResult:
    dataset: Dataset
    report: dict
    failures: tuple[BagFailure, ...]


def problem_solution_bank(
    problems: Mapping[str, Problem],
    solutions: Mapping[str, SolutionSet],
    problem_filter: Optional[Sequence[str]] = None,
) -> list[tuple[Problem, SolutionSet]]:
    """Pair problems with their solution sets, keeping bank order; problems
    without solutions are skipped."""
    wanted = set(problem_filter) if problem_filter is not None else None
    bank = []
    for key, problem in problems.items():
        if wanted is not None and key not in wanted:
            continue
        if key in solutions:
            bank.append((problem, solutions[key]))
    return bank


def child_seed(master_seed: int, bag_index: int) -> int:
    digest = hashlib.sha256(f"{master_seed}:{bag_index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def sample_bag_indices(rng: random.Random, bank_size: int, n: int) -> list[int]:
    """n distinct indices into the bank, reproducible from the rng state."""
    if n > bank_size:
        raise InsufficientProblems(f"need {n} problems but bank holds {bank_size}")
    return rng.sample(range(bank_size), n)


def correct_only_count(num_bags: int, fraction: float) -> int:
    # round-half-up
    return int(num_bags * fraction + 0.5)


@dataclass
class _BagBuild:
    bag: Optional[Bag]
    error: Optional[str]
    attempted: int = 0
    injected: int = 0
    inapplicable: int = 0
    rejected: int = 0


def _build_bag(
    k: int,
    mc: Optional[Misconception],
    bank: Sequence[tuple[Problem, SolutionSet]],
    cfg: GenConfig,
    injector: Injector,
) -> _BagBuild:
    bag_id = f"bag-{k:04d}"
    rng = random.Random(child_seed(cfg.seed, k))
    n = rng.randint(cfg.bag_size_min, cfg.bag_size_max)
    indices = sample_bag_indices(rng, len(bank), n)

    build = _BagBuild(bag=None, error=None)
    pairs: list[ProblemCodePair] = []
    try:
        for idx in indices:
            problem, sols = bank[idx]
            solution = sols.solutions[rng.randrange(len(sols.solutions))]
            if mc is None:
                pairs.append(ProblemCodePair(problem_id=problem.id, code=solution))
                continue
            build.attempted += 1
            try:
                outcome = injector(problem, solution, mc)
            except ParseError as exc:
                log.warning("bag %s problem %s: %s; treating as rejected", bag_id, problem.id, exc)
                outcome = InjectionOutcome.rejected(str(exc))
            if outcome.kind == INJECTED:
                build.injected += 1
                pairs.append(ProblemCodePair(problem_id=problem.id, code=outcome.code, exhibits=mc.id))
            else:
                # inapplicable or judge-rejected: fall back to the correct solution
                if outcome.kind == "inapplicable":
                    build.inapplicable += 1
                else:
                    build.rejected += 1
                pairs.append(ProblemCodePair(problem_id=problem.id, code=solution))
    except GatewayError as exc:
        build.error = str(exc)
        return build

    gt = mc.id if mc is not None and any(p.exhibits is not None for p in pairs) else None
    build.bag = Bag(bag_id=bag_id, pairs=tuple(pairs), gt_label=gt)
    return build


def generate_dataset(
    mc_bank: Sequence[Misconception],
    ps_bank: Sequence[tuple[Problem, SolutionSet]],
    cfg: GenConfig,
    injector: Injector,
    workers: int = 1,
) -> GenResult:
    if not mc_bank or not ps_bank:
        raise ValueError("misconception and problem-solution banks must be non-empty")
    if len(ps_bank) < cfg.bag_size_max:
        raise InsufficientProblems(
            f"bank holds {len(ps_bank)} problems but bags need up to {cfg.bag_size_max}"
        )

    n_correct = correct_only_count(cfg.num_bags, cfg.correct_only_fraction)
    n_labeled = cfg.num_bags - n_correct

    def _mc_for(k: int) -> Optional[Misconception]:
        if k >= n_labeled:
            return None
        if cfg.misconception_selection == "round_robin":
            return mc_bank[k % len(mc_bank)]
        return random.Random(child_seed(cfg.seed, k) ^ 0xA5A5A5A5).choice(list(mc_bank))

    def _worker(k: int) -> _BagBuild:
        return _build_bag(k, _mc_for(k), ps_bank, cfg, injector)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            builds = list(pool.map(_worker, range(cfg.num_bags)))
    else:
        builds = [_worker(k) for k in range(cfg.num_bags)]

    bags: list[Bag] = []
    failures: list[BagFailure] = []
    attempted = injected = inapplicable = rejected = 0
    for k, build in enumerate(builds):
        attempted += build.attempted
        injected += build.injected
        inapplicable += build.inapplicable
        rejected += build.rejected
        if build.error is not None:
            failures.append(BagFailure(bag_id=f"bag-{k:04d}", error=build.error))
        else:
            bags.append(build.bag)

    dataset = Dataset(
        misconceptions={mc.id: mc for mc in mc_bank},
        problems={p.id: p for p, _ in ps_bank},
        bags=tuple(bags),
        generation_seed=cfg.seed,
        stats=dataset_stats(bags),
    )
    report = {
        "attempted": attempted,
        "injected": injected,
        "inapplicable": inapplicable,
        "rejected": rejected,
        "replaced": inapplicable + rejected,
        "failed_bags": [{"bag_id": f.bag_id, "error": f.error} for f in failures],
    }
    return GenResult(dataset=dataset, report=report, failures=tuple(failures))


def save_genreport(report: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")


def verify_solution(problem: Problem, code: str, runner: Sequence[str]) -> bool:
    """Optional hook: shell out to a configured runner command which reads
    {"problem_id", "description", "tests", "code"} on stdin and exits 0 if
    the solution passes. Off unless a runner is configured."""
    payload = json.dumps(
        {
            "problem_id": problem.id,
            "description": problem.description,
            "tests": list(problem.tests),
            "code": code,
        }
    )
    proc = subprocess.run(runner, input=payload, capture_output=True, text=True)
    return proc.returncode == 0


def filter_verified(
    ps_bank: Sequence[tuple[Problem, SolutionSet]],
    runner: Sequence[str],
) -> list[tuple[Problem, SolutionSet]]:
    """Keep only solutions the runner accepts; drop problems left with none."""
    kept = []
    for problem, sols in ps_bank:
        passing = tuple(s for s in sols.solutions if verify_solution(problem, s, runner))
        if passing:
            kept.append((problem, SolutionSet(problem_id=problem.id, solutions=passing)))
    return kept
