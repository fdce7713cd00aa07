"""Deterministic mock backend: scripted responses keyed on prompt content.

A scenario is an ordered rule list; the first matching rule wins. Responses
depend only on the rendered conversation text, so outcomes are identical
regardless of call order or interleaving.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from ..errors import MalformedScenario
from .types import Completion, Message, conversation_text

MATCH_KINDS = ("substring", "hash", "any")


@dataclass(frozen=True)
class ScenarioRule:
    kind: str
    value: Optional[str]
    response: str
    reasoning: Optional[str] = None

    def matches(self, prompt_text: str) -> bool:
        if self.kind == "any":
            return True
        if self.kind == "substring":
            return self.value in prompt_text
        return hashlib.sha256(prompt_text.encode("utf-8")).hexdigest() == self.value


@dataclass(frozen=True)
class MockScenario:
    rules: tuple[ScenarioRule, ...]

    def __post_init__(self):
        if not any(rule.kind == "any" for rule in self.rules):
            raise MalformedScenario("scenario has no default (any) rule")

    def respond(self, prompt_text: str) -> ScenarioRule:
        for rule in self.rules:
            if rule.matches(prompt_text):
                return rule
        raise AssertionError("unreachable: default rule always matches")


def _decode_rule(obj: dict, index: int) -> ScenarioRule:
    if not isinstance(obj, dict) or "match" not in obj or "response" not in obj:
        raise MalformedScenario(f"rule {index}: expected object with 'match' and 'response'")
    match = obj["match"]
    if not isinstance(match, dict) or len(match) != 1:
        raise MalformedScenario(f"rule {index}: 'match' must hold exactly one matcher")
    kind, value = next(iter(match.items()))
    if kind not in MATCH_KINDS:
        raise MalformedScenario(f"rule {index}: unknown matcher {kind!r}")
    if kind == "any":
        if value is not True:
            raise MalformedScenario(f"rule {index}: 'any' matcher must be true")
        value = None
    elif not isinstance(value, str):
        raise MalformedScenario(f"rule {index}: {kind!r} matcher must be a string")
    response = obj["response"]
    if not isinstance(response, str):
        raise MalformedScenario(f"rule {index}: 'response' must be a string")
    reasoning = obj.get("reasoning")
    if reasoning is not None and not isinstance(reasoning, str):
        raise MalformedScenario(f"rule {index}: 'reasoning' must be a string")
    return ScenarioRule(kind=kind, value=value, response=response, reasoning=reasoning)


def mock_scenario_load(path: str | Path) -> MockScenario:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedScenario(f"scenario is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise MalformedScenario("scenario must be a JSON array of rules")
    rules = tuple(_decode_rule(obj, i) for i, obj in enumerate(data))
    return MockScenario(rules=rules)


class MockBackend:
    """Scripted completion source. Keeps a call log for tests; appends are
    atomic, and responses never depend on the log."""

    def __init__(self, scenario: MockScenario):
        self.scenario = scenario
        self.calls: list[tuple[Message, ...]] = []

    def complete(self, config, convo: Sequence[Message]) -> Completion:
        text = conversation_text(convo)
        self.calls.append(tuple(convo))
        rule = self.scenario.respond(text)
        return Completion(text=rule.response, reasoning_trace=rule.reasoning)
