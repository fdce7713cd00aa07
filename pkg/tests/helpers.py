"""Shared builders for scripted scenarios and canned model replies."""

from mcmine.gateway import MockScenario, ScenarioRule

MINER_NONE = "<misconception>NONE</misconception>"


def rule(substring: str, response: str, reasoning: str | None = None) -> ScenarioRule:
    return ScenarioRule(kind="substring", value=substring, response=response, reasoning=reasoning)


def any_rule(response: str, reasoning: str | None = None) -> ScenarioRule:
    return ScenarioRule(kind="any", value=None, response=response, reasoning=reasoning)


def scenario(*rules: ScenarioRule, default: str = MINER_NONE) -> MockScenario:
    return MockScenario(rules=tuple(rules) + (any_rule(default),))


def code_response(code: str) -> str:
    return f"<code>\n{code}\n</code>"


CODE_NONE = "<code>\nNONE\n</code>"


def miner_found(description: str, explanation: str = "because") -> str:
    return (
        "<misconception>\n"
        f"<description>{description}</description>\n"
        f"<explanation>{explanation}</explanation>\n"
        "</misconception>"
    )


def judge_answer(exhibits: bool, feedback: str | None = None) -> str:
    flag = "Y" if exhibits else "N"
    text = feedback if feedback is not None else "NONE"
    return (
        "<answer>\n"
        f"<exhibits_misconception>{flag}</exhibits_misconception>\n"
        f"<feedback>{text}</feedback>\n"
        "</answer>"
    )


def match_answer(matched: bool) -> str:
    value = "true" if matched else "false"
    return f"<evaluation>\n<match>{value}</match>\n</evaluation>"
