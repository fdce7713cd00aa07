"""Adapters from the neutral request shape to each vendor's wire format.

Vendor-specific constraints live here, not in callers: effort-style configs
omit temperature entirely, and the anthropic-like adapter pins temperature
to 1.0 whenever a thinking budget is enabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import ProviderRefusalError
from ..model import ModelConfig
from .types import Completion, Message

ENV_PREFIX = {
    "openai-like": "OPENAI",
    "anthropic-like": "ANTHROPIC",
    "gemini-like": "GEMINI",
}

DEFAULT_BASE_URL = {
    "openai-like": "https://api.openai.com",
    "anthropic-like": "https://api.anthropic.com",
    "gemini-like": "https://generativelanguage.googleapis.com",
}


@dataclass(frozen=True)
class ProviderRequest:
    provider: str
    url: str
    headers: Mapping[str, str]
    body: Mapping


def _openai_build(config: ModelConfig, convo: Sequence[Message], api_key: str, base_url: str) -> ProviderRequest:
    body: dict = {
        "model": config.model_name,
        "messages": [{"role": m.role, "content": m.content} for m in convo],
        "max_completion_tokens": config.max_tokens,
    }
    if config.reasoning.mode == "effort":
        body["reasoning_effort"] = config.reasoning.effort
    else:
        body["temperature"] = config.temperature
    return ProviderRequest(
        provider=config.provider,
        url=f"{base_url}/v1/chat/completions",
        headers={"Authorization": f"Bearer {api_key}"},
        body=body,
    )


def _openai_parse(data: Mapping) -> Completion:
    try:
        message = data["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ProviderRefusalError(f"no completion in response: {exc}") from exc
    text = message.get("content")
    if not text:
        raise ProviderRefusalError("provider returned an empty completion")
    return Completion(text=text, usage=data.get("usage"))


def _anthropic_build(config: ModelConfig, convo: Sequence[Message], api_key: str, base_url: str) -> ProviderRequest:
    system_parts = [m.content for m in convo if m.role == "system"]
    messages = [{"role": m.role, "content": m.content} for m in convo if m.role != "system"]
    thinking = config.reasoning.mode == "budget"
    body: dict = {
        "model": config.model_name,
        "max_tokens": config.max_tokens,
        "messages": messages,
        "temperature": 1.0 if thinking else config.temperature,
    }
    if system_parts:
        body["system"] = "\n\n".join(system_parts)
    if thinking:
        body["thinking"] = {"type": "enabled", "budget_tokens": config.reasoning.budget_tokens}
    return ProviderRequest(
        provider=config.provider,
        url=f"{base_url}/v1/messages",
        headers={"x-api-key": api_key, "anthropic-version": "2023-06-01"},
        body=body,
    )


def _anthropic_parse(data: Mapping) -> Completion:
    blocks = data.get("content") or []
    text = "".join(b.get("text", "") for b in blocks if b.get("type") == "text")
    trace = "\n".join(b.get("thinking", "") for b in blocks if b.get("type") == "thinking") or None
    if not text:
        raise ProviderRefusalError("provider returned an empty completion")
    return Completion(text=text, reasoning_trace=trace, usage=data.get("usage"))


def _gemini_build(config: ModelConfig, convo: Sequence[Message], api_key: str, base_url: str) -> ProviderRequest:
    system_parts = [m.content for m in convo if m.role == "system"]
    contents = [
        {"role": "model" if m.role == "assistant" else "user", "parts": [{"text": m.content}]}
        for m in convo
        if m.role != "system"
    ]
    generation: dict = {"temperature": config.temperature, "maxOutputTokens": config.max_tokens}
    if config.reasoning.mode == "budget":
        generation["thinkingConfig"] = {"thinkingBudget": config.reasoning.budget_tokens}
    body: dict = {"contents": contents, "generationConfig": generation}
    if system_parts:
        body["systemInstruction"] = {"parts": [{"text": "\n\n".join(system_parts)}]}
    return ProviderRequest(
        provider=config.provider,
        url=f"{base_url}/v1beta/models/{config.model_name}:generateContent",
        headers={"x-goog-api-key": api_key},
        body=body,
    )


def _gemini_parse(data: Mapping) -> Completion:
    try:
        parts = data["candidates"][0]["content"]["parts"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ProviderRefusalError(f"no completion in response: {exc}") from exc
    text = "".join(p.get("text", "") for p in parts if not p.get("thought"))
    trace = "\n".join(p.get("text", "") for p in parts if p.get("thought")) or None
    if not text:
        raise ProviderRefusalError("provider returned an empty completion")
    return Completion(text=text, reasoning_trace=trace, usage=data.get("usageMetadata"))


@dataclass(frozen=True)
class Adapter:
    build: object
    parse: object


ADAPTERS: dict[str, Adapter] = {
    "openai-like": Adapter(build=_openai_build, parse=_openai_parse),
    "anthropic-like": Adapter(build=_anthropic_build, parse=_anthropic_parse),
    "gemini-like": Adapter(build=_gemini_build, parse=_gemini_parse),
}


def api_key_var(provider: str) -> str:
    return f"{ENV_PREFIX[provider]}_API_KEY"


def base_url(provider: str, env: Mapping[str, str]) -> str:
    return env.get(f"{ENV_PREFIX[provider]}_BASE_URL", DEFAULT_BASE_URL[provider]).rstrip("/")
