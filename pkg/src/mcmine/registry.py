"""Model registry: named model configurations for the CLI and the service.

The registry file is JSON: ``{"models": {"<id>": {provider, model_name,
temperature, max_tokens, reasoning}}}``. The ``MCMINE_CONFIG`` environment
variable points at a registry file; without it the packaged defaults are
used.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional

from .model import ModelConfig, Reasoning

CONFIG_ENV_VAR = "MCMINE_CONFIG"


def decode_reasoning(obj: Optional[Mapping]) -> Reasoning:
    if obj is None:
        return Reasoning.off()
    mode = obj.get("mode", "off")
    if mode == "off":
        return Reasoning.off()
    if mode == "budget":
        return Reasoning.budget(obj["budget_tokens"])
    if mode == "effort":
        return Reasoning.with_effort(obj["effort"])
    raise ValueError(f"unknown reasoning mode: {mode!r}")


def decode_model_config(obj: Mapping) -> ModelConfig:
    return ModelConfig(
        provider=obj["provider"],
        model_name=obj["model_name"],
        temperature=obj.get("temperature", 0.0),
        max_tokens=obj.get("max_tokens", 4000),
        reasoning=decode_reasoning(obj.get("reasoning")),
    )


@dataclass(frozen=True)
class ModelRegistry:
    models: Mapping[str, ModelConfig]

    def get(self, model_id: str) -> ModelConfig:
        if model_id not in self.models:
            known = ", ".join(sorted(self.models))
            raise KeyError(f"unknown model id {model_id!r}; configured: {known}")
        return self.models[model_id]

    def ids(self) -> list[str]:
        return list(self.models)


def load_registry(path: Optional[str | Path] = None, env: Optional[Mapping[str, str]] = None) -> ModelRegistry:
    env = env if env is not None else os.environ
    if path is None:
        path = env.get(CONFIG_ENV_VAR)
    if path is None:
        text = resources.files("mcmine.data").joinpath("models.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text)
    models = {model_id: decode_model_config(obj) for model_id, obj in data["models"].items()}
    return ModelRegistry(models=models)


def with_mock_provider(cfg: ModelConfig) -> ModelConfig:
    return replace(cfg, provider="mock")


def with_reasoning(cfg: ModelConfig, enabled: bool) -> ModelConfig:
    """Toggle reasoning for a request. Enabling on a config without any
    reasoning mode picks the provider's natural form (effort for
    openai-like, otherwise a 2000-token budget, growing max_tokens to fit)."""
    if not enabled:
        return replace(cfg, reasoning=Reasoning.off())
    if cfg.reasoning.enabled:
        return cfg
    if cfg.provider == "openai-like":
        return replace(cfg, reasoning=Reasoning.with_effort("medium"))
    budget = 2000
    return replace(
        cfg,
        max_tokens=max(cfg.max_tokens, budget + 4000),
        reasoning=Reasoning.budget(budget),
    )
