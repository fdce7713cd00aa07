"""Injection of a target misconception into a correct solution, validated by
an LLM judge with at most one feedback-refinement round by default."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .errors import ParseError, TokenizeError
from .gateway import Gateway, Message, assistant, load_template, render, user
from .model import JudgeVerdict, Misconception, ModelConfig, Problem, Reasoning
from .postprocess import strip_comments

_CODE_BLOCK = re.compile(r"<code>(.*?)</code>", re.DOTALL)
_ANSWER = re.compile(
    r"<answer>\s*"
    r"<exhibits_misconception>([YN])</exhibits_misconception>\s*"
    r"(?:<feedback>(.*?)</feedback>\s*)?"
    r"</answer>",
    re.DOTALL,
)

INJECTED = "injected"
INAPPLICABLE = "inapplicable"
REJECTED = "rejected"


@dataclass(frozen=True)
class InjectionOutcome:
    kind: str
    code: Optional[str] = None
    refined: bool = False
    last_feedback: Optional[str] = None

    @classmethod
    def injected(cls, code: str, refined: bool) -> "InjectionOutcome":
        return cls(kind=INJECTED, code=code, refined=refined)

    @classmethod
    def inapplicable(cls) -> "InjectionOutcome":
        return cls(kind=INAPPLICABLE)

    @classmethod
    def rejected(cls, last_feedback: Optional[str]) -> "InjectionOutcome":
        return cls(kind=REJECTED, last_feedback=last_feedback)


@dataclass(frozen=True)
class InjectionDraft:
    """First-round result: the generated code (None when the model declared
    the misconception inapplicable) plus the conversation so far."""

    code: Optional[str]
    raw: str
    convo: tuple[Message, ...]


@lru_cache(maxsize=None)
def _template(name: str):
    return load_template(name)


def default_inject_config() -> ModelConfig:
    return ModelConfig(
        provider="anthropic-like",
        model_name="claude-sonnet-4-5",
        temperature=1.0,
        max_tokens=6000,
        reasoning=Reasoning.budget(2000),
    )


def default_judge_config() -> ModelConfig:
    return default_inject_config()


def extract_code(text: str) -> Optional[str]:
    """First well-formed <code> block; surrounding prose is ignored. Returns
    None for the literal NONE marker (misconception not applicable)."""
    match = _CODE_BLOCK.search(text)
    if match is None:
        raise ParseError("no well-formed <code> block in completion")
    body = match.group(1)
    if body.strip() == "NONE":
        return None
    return body.strip("\r\n")


def _clean(code: str) -> str:
    # Comment stripping gates only itself: untokenizable code (some
    # misconceptions are deliberate syntax errors) passes through unstripped.
    try:
        return strip_comments(code)
    except TokenizeError:
        return code


def inject(
    problem: Problem,
    solution: str,
    mc: Misconception,
    cfg: ModelConfig,
    gateway: Gateway,
) -> InjectionDraft:
    prompt = render(
        _template("inject"),
        {
            "problem_description": problem.description,
            "correct_solution": solution,
            "misconception_description": mc.description,
            "misconception_example": mc.example_code,
        },
    )
    convo: tuple[Message, ...] = (user(prompt),)
    completion = gateway.complete(cfg, convo)
    convo = convo + (assistant(completion.text),)
    body = extract_code(completion.text)
    code = _clean(body) if body is not None else None
    return InjectionDraft(code=code, raw=completion.text, convo=convo)


def parse_judge_answer(text: str) -> JudgeVerdict:
    match = _ANSWER.search(text)
    if match is None:
        raise ParseError("no well-formed <answer> block in judge completion")
    exhibits = match.group(1) == "Y"
    feedback = match.group(2)
    if feedback is not None:
        feedback = feedback.strip()
        if not feedback or feedback == "NONE":
            feedback = None
    return JudgeVerdict(exhibits=exhibits, feedback=feedback)


def judge_exhibits(
    mc: Misconception,
    code: str,
    cfg: ModelConfig,
    gateway: Gateway,
) -> JudgeVerdict:
    prompt = render(
        _template("judge"),
        {
            "misconception_description": mc.description,
            "misconception_example": mc.example_code,
            "code_to_analyze": code,
        },
    )
    completion = gateway.complete(cfg, (user(prompt),))
    return parse_judge_answer(completion.text)


def inject_with_refinement(
    problem: Problem,
    solution: str,
    mc: Misconception,
    inject_cfg: ModelConfig,
    judge_cfg: ModelConfig,
    gateway: Gateway,
    max_refinements: int = 1,
    audit_sink: Optional[Callable[[dict], None]] = None,
) -> InjectionOutcome:
    """Inject, judge, and refine at most ``max_refinements`` times. The
    refinement turn extends the original conversation, preserving the first
    prompt and the model's initial reply."""

    def _audit(outcome: InjectionOutcome, raw_first: str, raw_second: Optional[str],
               feedback: Optional[str]) -> InjectionOutcome:
        if audit_sink is not None:
            audit_sink(
                {
                    "problem_id": problem.id,
                    "misconception_id": mc.id,
                    "outcome": outcome.kind,
                    "refined": outcome.refined,
                    "raw_first": raw_first,
                    "raw_second": raw_second,
                    "judge_feedback": feedback,
                }
            )
        return outcome

    draft = inject(problem, solution, mc, inject_cfg, gateway)
    if draft.code is None:
        return _audit(InjectionOutcome.inapplicable(), draft.raw, None, None)

    code = draft.code
    convo = draft.convo
    verdict = judge_exhibits(mc, code, judge_cfg, gateway)
    if verdict.exhibits:
        return _audit(InjectionOutcome.injected(code, refined=False), draft.raw, None, verdict.feedback)

    raw_second: Optional[str] = None
    last_feedback = verdict.feedback
    rounds = 0
    while not verdict.exhibits and verdict.feedback is not None and rounds < max_refinements:
        rounds += 1
        convo = convo + (user(render(_template("refine"), {"feedback": verdict.feedback})),)
        completion = gateway.complete(inject_cfg, convo)
        raw_second = completion.text
        convo = convo + (assistant(completion.text),)
        body = extract_code(completion.text)
        if body is None:
            return _audit(InjectionOutcome.inapplicable(), draft.raw, raw_second, last_feedback)
        code = _clean(body)
        verdict = judge_exhibits(mc, code, judge_cfg, gateway)
        if verdict.feedback is not None:
            last_feedback = verdict.feedback

    if verdict.exhibits:
        outcome = InjectionOutcome.injected(code, refined=rounds > 0)
    else:
        outcome = InjectionOutcome.rejected(last_feedback)
    return _audit(outcome, draft.raw, raw_second, last_feedback)


def make_injector(
    inject_cfg: ModelConfig,
    judge_cfg: ModelConfig,
    gateway: Gateway,
    max_refinements: int = 1,
    audit_sink: Optional[Callable[[dict], None]] = None,
) -> Callable[[Problem, str, Misconception], InjectionOutcome]:
    """Close over the configs so dataset generation sees a plain
    (problem, solution, misconception) -> outcome callable."""

    def _inject(problem: Problem, solution: str, mc: Misconception) -> InjectionOutcome:
        return inject_with_refinement(
            problem, solution, mc, inject_cfg, judge_cfg, gateway,
            max_refinements=max_refinements, audit_sink=audit_sink,
        )

    return _inject
