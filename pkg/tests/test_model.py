import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcmine.model import (
    Bag,
    Dataset,
    DatasetStats,
    MiningPrediction,
    Misconception,
    ModelConfig,
    Problem,
    ProblemCodePair,
    Reasoning,
    dataset_stats,
    single_sentence_violation,
    validate_dataset,
)


def _mc(mc_id="mc-1", description="Student believes that `x` is always an integer."):
    return Misconception(
        id=mc_id,
        description=description,
        example_code="x = 1",
        category="harmful",
        origin="documented",
    )


def _problem(pid="p-1"):
    return Problem(id=pid, description="Do a thing.", tests=("assert True",))


def _bag(bag_id, pairs, gt=None):
    return Bag(bag_id=bag_id, pairs=tuple(pairs), gt_label=gt)


def _pair(pid="p-1", code="x = 1\n", exhibits=None):
    return ProblemCodePair(problem_id=pid, code=code, exhibits=exhibits)


def _dataset(bags, mcs=None, problems=None, stats=None):
    bags = tuple(bags)
    return Dataset(
        misconceptions=mcs if mcs is not None else {"mc-1": _mc()},
        problems=problems if problems is not None else {"p-1": _problem()},
        bags=bags,
        generation_seed=0,
        stats=stats if stats is not None else dataset_stats(bags),
    )


class TestSentenceRule:
    def test_plain_sentence_ok(self):
        assert single_sentence_violation("Student believes that x is y.") is None

    def test_terminator_inside_code_span_ignored(self):
        assert single_sentence_violation("Student believes that `list.pop` removes the head.") is None

    def test_missing_terminator(self):
        assert single_sentence_violation("Student believes that x is y") is not None

    def test_two_sentences(self):
        assert single_sentence_violation("Student believes X. It is wrong.") is not None

    def test_interior_terminator(self):
        assert single_sentence_violation("Student believes 3.5 rounds down.") is not None

    def test_empty(self):
        assert single_sentence_violation("   ") is not None


class TestConfigInvariants:
    def test_budget_must_stay_below_max_tokens(self):
        with pytest.raises(ValueError):
            ModelConfig(provider="mock", model_name="m", max_tokens=1000, reasoning=Reasoning.budget(1000))

    def test_max_tokens_positive(self):
        with pytest.raises(ValueError):
            ModelConfig(provider="mock", model_name="m", max_tokens=0)

    def test_unknown_provider(self):
        with pytest.raises(ValueError):
            ModelConfig(provider="cloud", model_name="m")

    def test_effort_levels(self):
        with pytest.raises(ValueError):
            Reasoning.with_effort("extreme")
        assert Reasoning.with_effort("low").enabled

    def test_found_prediction_needs_description(self):
        with pytest.raises(ValueError):
            MiningPrediction.found("   ")
        assert not MiningPrediction.none_found().is_found

    def test_solution_set_requires_a_solution(self):
        from mcmine.model import SolutionSet

        with pytest.raises(ValueError):
            SolutionSet(problem_id="p", solutions=())


class TestDatasetStats:
    def test_paper_scale_bag_split(self):
        bags = [_bag(f"b{i}", [_pair(exhibits="mc-1")] * 4, gt="mc-1") for i in range(279)]
        bags += [_bag(f"c{i}", [_pair()] * 4) for i in range(60)]
        stats = dataset_stats(bags)
        assert stats.total_bags == 339
        assert stats.bags_with_misconception == 279
        assert stats.bags_correct_only == 60

    def test_zero_bags(self):
        stats = dataset_stats([])
        assert stats == DatasetStats(0, 0, 0, 0, 0, 0)

    def test_seeded_bags_match_independent_recount(self):
        rng = random.Random(7)
        bags = []
        for i in range(10):
            size = rng.randint(4, 8)
            pairs = [
                _pair(exhibits="mc-1" if rng.random() < 0.6 else None) for _ in range(size)
            ]
            gt = "mc-1" if any(p.exhibits for p in pairs) else None
            bags.append(_bag(f"b{i}", pairs, gt=gt))

        # independent one-pass recount
        total = exhibiting = labeled = 0
        for bag in bags:
            for pair in bag.pairs:
                total += 1
                if pair.exhibits is not None:
                    exhibiting += 1
            if bag.gt_label is not None:
                labeled += 1

        stats = dataset_stats(bags)
        assert stats.total_samples == total
        assert stats.samples_exhibiting == exhibiting
        assert stats.samples_clean == total - exhibiting
        assert stats.bags_with_misconception == labeled
        assert stats.bags_correct_only == 10 - labeled

    def test_permutation_invariant(self):
        rng = random.Random(3)
        bags = [
            _bag(f"b{i}", [_pair()] * rng.randint(4, 8), gt=None) for i in range(12)
        ]
        shuffled = list(bags)
        rng.shuffle(shuffled)
        assert dataset_stats(bags) == dataset_stats(shuffled)


def _paper_scale_dataset():
    """339 bags recounting exactly to the published benchmark statistics."""
    bags = []
    # 319 bags of five pairs, 20 of four: 1675 samples in total
    sizes = [5] * 319 + [4] * 20
    # 1063 exhibiting pairs spread over the first 279 (labeled) bags
    exhibit_counts = [4] * 226 + [3] * 53 + [0] * 60
    for i, (size, k) in enumerate(zip(sizes, exhibit_counts)):
        pairs = [_pair(exhibits="mc-1")] * k + [_pair()] * (size - k)
        bags.append(_bag(f"b{i:03d}", pairs, gt="mc-1" if k else None))
    return _dataset(bags)


class TestValidateDataset:
    def test_paper_scale_stats_have_no_violation(self):
        dataset = _paper_scale_dataset()
        assert dataset.stats.total_samples == 1675
        assert dataset.stats.samples_exhibiting == 1063
        assert dataset.stats.samples_clean == 612
        assert validate_dataset(dataset) == []

    def test_empty_dataset_valid(self):
        dataset = _dataset([], mcs={}, problems={})
        assert validate_dataset(dataset) == []

    def test_undersized_bag_named(self):
        dataset = _dataset([_bag("b-small", [_pair()] * 3)])
        violations = validate_dataset(dataset)
        assert len(violations) == 1
        assert "b-small" in violations[0]

    def test_unresolved_references_named(self):
        bag = _bag("b0", [_pair(pid="ghost", exhibits="mc-ghost")] * 4, gt="mc-ghost")
        violations = validate_dataset(_dataset([bag]))
        assert any("ghost" in v for v in violations)
        assert any("mc-ghost" in v for v in violations)

    def test_label_without_exhibiting_pair(self):
        bag = _bag("b0", [_pair()] * 4, gt="mc-1")
        violations = validate_dataset(_dataset([bag]))
        assert any("no pair exhibits" in v for v in violations)

    def test_stats_mismatch_reported(self):
        bags = [_bag("b0", [_pair()] * 4)]
        broken = DatasetStats(99, 50, 49, 1, 0, 1)
        violations = validate_dataset(_dataset(bags, stats=broken))
        assert any("recount" in v for v in violations)

    def test_stats_identity_violations_reported(self):
        broken = DatasetStats(10, 4, 3, 2, 1, 0)
        violations = validate_dataset(_dataset([], stats=broken))
        assert any("total_samples" in v for v in violations)
        assert any("total_bags" in v for v in violations)

    def test_misconception_guideline_checks(self):
        bad = Misconception(
            id="mc-bad",
            description="The student thinks x. And y",
            example_code="",
            category="odd",
            origin="guessed",
        )
        violations = validate_dataset(_dataset([], mcs={"mc-bad": bad}))
        joined = "\n".join(violations)
        assert "Student believes" in joined
        assert "category" in joined
        assert "origin" in joined

    def test_untested_problem_flag(self):
        untested = Problem(id="p-u", description="No tests here.", untested=True)
        tested_missing = Problem(id="p-m", description="Missing tests.")
        violations = validate_dataset(
            _dataset([], problems={"p-u": untested, "p-m": tested_missing})
        )
        assert len(violations) == 1
        assert "p-m" in violations[0]

    def test_valid_dataset_stats_agree_with_recount(self):
        dataset = _paper_scale_dataset()
        assert validate_dataset(dataset) == []
        assert dataset_stats(dataset.bags) == dataset.stats


@given(
    st.lists(
        st.tuples(st.integers(min_value=4, max_value=8), st.integers(min_value=0, max_value=8)),
        max_size=20,
    )
)
def test_stats_identities_hold_for_arbitrary_bags(shape):
    bags = []
    for i, (size, want_exhibit) in enumerate(shape):
        k = min(size, want_exhibit)
        pairs = [_pair(exhibits="mc-1")] * k + [_pair()] * (size - k)
        bags.append(_bag(f"b{i}", pairs, gt="mc-1" if k else None))
    stats = dataset_stats(bags)
    assert stats.total_samples == stats.samples_exhibiting + stats.samples_clean
    assert stats.total_bags == stats.bags_with_misconception + stats.bags_correct_only
