"""Core domain types: misconceptions, problems, bags, datasets, and their
structural validation.

All types are immutable after construction. Constructors are permissive for
the data-bank types (Misconception, Problem, Bag, ...) so that malformed
files can still be loaded and reported: structural invariants are checked by
``validate_dataset``, which returns violations as data rather than raising.
``ModelConfig`` and ``MiningPrediction`` carry hard invariants and reject bad
values at construction time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

CATEGORIES = ("harmful", "benign")
ORIGINS = ("documented", "artificial")
PROVIDERS = ("openai-like", "anthropic-like", "gemini-like", "mock")
EFFORT_LEVELS = ("low", "medium", "high")

DESCRIPTION_PREFIX = "Student believes"

DEFAULT_BAG_SIZE_MIN = 4
DEFAULT_BAG_SIZE_MAX = 8


@dataclass(frozen=True)
class Misconception:
    """A single false belief about a language construct, with one example."""

    id: str
    description: str
    example_code: str
    category: str
    origin: str
    source: str = ""


@dataclass(frozen=True)
class Problem:
    id: str
    description: str
    tests: tuple[str, ...] = ()
    source: str = ""
    untested: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tests", tuple(self.tests))


@dataclass(frozen=True)
class SolutionSet:
    """One or more correct solutions for a problem."""

    problem_id: str
    solutions: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "solutions", tuple(self.solutions))
        if not self.solutions:
            raise ValueError(f"solution set for {self.problem_id!r} is empty")


@dataclass(frozen=True)
class ProblemCodePair:
    problem_id: str
    code: str
    exhibits: Optional[str] = None


@dataclass(frozen=True)
class Bag:
    """A simulated student's submission set, optionally labeled with the
    misconception its pairs were built to exhibit. ``gt_label`` absent means
    a correct-only bag."""

    bag_id: str
    pairs: tuple[ProblemCodePair, ...]
    gt_label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))


@dataclass(frozen=True)
class DatasetStats:
    total_samples: int
    samples_exhibiting: int
    samples_clean: int
    total_bags: int
    bags_with_misconception: int
    bags_correct_only: int


@dataclass(frozen=True)
class Dataset:
    misconceptions: Mapping[str, Misconception]
    problems: Mapping[str, Problem]
    bags: tuple[Bag, ...]
    generation_seed: int
    stats: DatasetStats

    def __post_init__(self):
        object.__setattr__(self, "misconceptions", dict(self.misconceptions))
        object.__setattr__(self, "problems", dict(self.problems))
        object.__setattr__(self, "bags", tuple(self.bags))


@dataclass(frozen=True)
class MiningPrediction:
    """Either a found misconception (description + explanation) or an
    explicit none. ``description`` is None exactly for the none case."""

    description: Optional[str]
    explanation: str = ""

    def __post_init__(self):
        if self.description is not None and not self.description.strip():
            raise ValueError("found prediction requires a non-empty description")

    @classmethod
    def found(cls, description: str, explanation: str = "") -> "MiningPrediction":
        return cls(description=description, explanation=explanation)

    @classmethod
    def none_found(cls) -> "MiningPrediction":
        return cls(description=None, explanation="")

    @property
    def is_found(self) -> bool:
        return self.description is not None


@dataclass(frozen=True)
class JudgeVerdict:
    exhibits: bool
    feedback: Optional[str] = None


@dataclass(frozen=True)
class Reasoning:
    """Reasoning mode for a model config: disabled, a thinking-token budget,
    or a named effort level."""

    mode: str = "off"
    budget_tokens: Optional[int] = None
    effort: Optional[str] = None

    def __post_init__(self):
        if self.mode not in ("off", "budget", "effort"):
            raise ValueError(f"unknown reasoning mode: {self.mode!r}")
        if self.mode == "budget" and (self.budget_tokens is None or self.budget_tokens <= 0):
            raise ValueError("budget reasoning requires a positive token budget")
        if self.mode == "effort" and self.effort not in EFFORT_LEVELS:
            raise ValueError(f"effort must be one of {EFFORT_LEVELS}")

    @classmethod
    def off(cls) -> "Reasoning":
        return cls(mode="off")

    @classmethod
    def budget(cls, tokens: int) -> "Reasoning":
        return cls(mode="budget", budget_tokens=tokens)

    @classmethod
    def with_effort(cls, level: str) -> "Reasoning":
        return cls(mode="effort", effort=level)

    @property
    def enabled(self) -> bool:
        return self.mode != "off"


@dataclass(frozen=True)
class ModelConfig:
    provider: str
    model_name: str
    temperature: float = 0.0
    max_tokens: int = 4000
    reasoning: Reasoning = field(default_factory=Reasoning.off)

    def __post_init__(self):
        if self.provider not in PROVIDERS:
            raise ValueError(f"unknown provider: {self.provider!r}")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")
        if self.reasoning.mode == "budget" and self.reasoning.budget_tokens >= self.max_tokens:
            raise ValueError("reasoning budget must be below max_tokens")


_CODE_SPAN = re.compile(r"`[^`]*`")
_TERMINATORS = ".!?"


def single_sentence_violation(text: str) -> Optional[str]:
    """Check the one-sentence rule: exactly one of ``. ! ?`` and it must sit
    at the end, ignoring backtick code spans. Returns a reason or None."""
    prose = _CODE_SPAN.sub("", text).rstrip()
    if not prose:
        return "description is empty"
    count = sum(prose.count(ch) for ch in _TERMINATORS)
    if count == 0:
        return "description has no sentence terminator"
    if count > 1:
        return "description has more than one sentence terminator"
    if prose[-1] not in _TERMINATORS:
        return "sentence terminator is not at the end"
    return None


def _check_misconception(mc: Misconception, out: list[str]) -> None:
    if not mc.description.strip():
        out.append(f"misconception {mc.id!r}: description is empty")
        return
    reason = single_sentence_violation(mc.description)
    if reason is not None:
        out.append(f"misconception {mc.id!r}: {reason}")
    if not mc.description.startswith(DESCRIPTION_PREFIX):
        out.append(f"misconception {mc.id!r}: description does not start with {DESCRIPTION_PREFIX!r}")
    if mc.category not in CATEGORIES:
        out.append(f"misconception {mc.id!r}: category {mc.category!r} not in {CATEGORIES}")
    if mc.origin not in ORIGINS:
        out.append(f"misconception {mc.id!r}: origin {mc.origin!r} not in {ORIGINS}")


def _check_problem(problem: Problem, out: list[str]) -> None:
    if not problem.description.strip():
        out.append(f"problem {problem.id!r}: description is empty")
    if not problem.tests and not problem.untested:
        out.append(f"problem {problem.id!r}: no tests and not flagged untested")


def _check_bag(
    bag: Bag,
    dataset: Dataset,
    size_min: int,
    size_max: int,
    out: list[str],
) -> None:
    n = len(bag.pairs)
    if not size_min <= n <= size_max:
        out.append(f"bag {bag.bag_id!r}: {n} pairs outside [{size_min}, {size_max}]")
    for pair in bag.pairs:
        if not pair.code:
            out.append(f"bag {bag.bag_id!r}: empty code for problem {pair.problem_id!r}")
        if pair.problem_id not in dataset.problems:
            out.append(f"bag {bag.bag_id!r}: unknown problem {pair.problem_id!r}")
        if pair.exhibits is not None and pair.exhibits not in dataset.misconceptions:
            out.append(f"bag {bag.bag_id!r}: unknown misconception {pair.exhibits!r}")
    if bag.gt_label is not None:
        if bag.gt_label not in dataset.misconceptions:
            out.append(f"bag {bag.bag_id!r}: unknown gt misconception {bag.gt_label!r}")
        if not any(pair.exhibits == bag.gt_label for pair in bag.pairs):
            out.append(f"bag {bag.bag_id!r}: no pair exhibits its label {bag.gt_label!r}")


def dataset_stats(bags: Sequence[Bag]) -> DatasetStats:
    """Tally sample and bag counts; the additive identities hold by
    construction."""
    exhibiting = sum(1 for bag in bags for pair in bag.pairs if pair.exhibits is not None)
    clean = sum(1 for bag in bags for pair in bag.pairs if pair.exhibits is None)
    labeled = sum(1 for bag in bags if bag.gt_label is not None)
    return DatasetStats(
        total_samples=exhibiting + clean,
        samples_exhibiting=exhibiting,
        samples_clean=clean,
        total_bags=len(bags),
        bags_with_misconception=labeled,
        bags_correct_only=len(bags) - labeled,
    )


def validate_dataset(
    dataset: Dataset,
    bag_size_min: int = DEFAULT_BAG_SIZE_MIN,
    bag_size_max: int = DEFAULT_BAG_SIZE_MAX,
) -> list[str]:
    """Return a description of every invariant violation, empty if the
    dataset is structurally sound. Violations are data, not faults."""
    out: list[str] = []
    for mc in dataset.misconceptions.values():
        _check_misconception(mc, out)
    for problem in dataset.problems.values():
        _check_problem(problem, out)
    for bag in dataset.bags:
        _check_bag(bag, dataset, bag_size_min, bag_size_max, out)

    stats = dataset.stats
    if stats.total_samples != stats.samples_exhibiting + stats.samples_clean:
        out.append("stats: total_samples != samples_exhibiting + samples_clean")
    if stats.total_bags != stats.bags_with_misconception + stats.bags_correct_only:
        out.append("stats: total_bags != bags_with_misconception + bags_correct_only")
    if dataset_stats(dataset.bags) != stats:
        out.append("stats: stored stats do not match a recount of the bags")
    return out
