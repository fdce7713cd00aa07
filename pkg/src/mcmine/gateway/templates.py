"""Prompt templates with `{placeholder}` sites, shipped as text assets."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from ..errors import MissingBinding

_PLACEHOLDER = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")

# Required bindings per shipped template; validated against the asset body
# at load time so an edited template cannot silently drop a site.
TEMPLATE_REQUIRED: dict[str, frozenset[str]] = {
    "inject": frozenset(
        {"problem_description", "correct_solution", "misconception_description", "misconception_example"}
    ),
    "refine": frozenset({"feedback"}),
    "judge": frozenset({"misconception_description", "misconception_example", "code_to_analyze"}),
    "miner_single": frozenset({"problem_description", "student_code"}),
    "miner_multi": frozenset({"code_samples"}),
    "semantic_match": frozenset({"ground_truth", "predicted_misconception", "code_samples"}),
}


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str
    required: frozenset[str]

    def __post_init__(self):
        present = placeholder_names(self.body)
        missing = self.required - present
        if missing:
            raise ValueError(
                f"template {self.name!r} is missing required placeholder sites: {sorted(missing)}"
            )


def placeholder_names(text: str) -> set[str]:
    return {m.group(1) for m in _PLACEHOLDER.finditer(text)}


def render_with_report(
    template: PromptTemplate, bindings: Mapping[str, str]
) -> tuple[str, tuple[str, ...]]:
    """Replace each bound `{name}` site verbatim in a single pass (bound
    values are never re-scanned). Returns the text plus any placeholder
    names left unresolved."""
    for name in sorted(template.required):
        if name not in bindings:
            raise MissingBinding(name)

    leftover: list[str] = []

    def _sub(match: re.Match) -> str:
        name = match.group(1)
        if name in bindings:
            return bindings[name]
        leftover.append(name)
        return match.group(0)

    text = _PLACEHOLDER.sub(_sub, template.body)
    return text, tuple(dict.fromkeys(leftover))


def render(template: PromptTemplate, bindings: Mapping[str, str]) -> str:
    return render_with_report(template, bindings)[0]


def load_template(name: str) -> PromptTemplate:
    """Load a shipped template asset by name (without the .txt suffix)."""
    if name not in TEMPLATE_REQUIRED:
        raise KeyError(f"unknown template: {name!r}")
    body = resources.files("mcmine.templates").joinpath(f"{name}.txt").read_text(encoding="utf-8")
    return PromptTemplate(name=name, body=body, required=TEMPLATE_REQUIRED[name])
