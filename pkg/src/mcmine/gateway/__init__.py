from .core import DEFAULT_MAX_CONCURRENT, Gateway, RetryPolicy, httpx_transport
from .mock import MockBackend, MockScenario, ScenarioRule, mock_scenario_load
from .providers import ADAPTERS, ProviderRequest, api_key_var, base_url
from .templates import (
    PromptTemplate,
    load_template,
    placeholder_names,
    render,
    render_with_report,
)
from .types import Completion, Message, assistant, conversation_text, system, user

__all__ = [
    "ADAPTERS",
    "Completion",
    "DEFAULT_MAX_CONCURRENT",
    "Gateway",
    "Message",
    "MockBackend",
    "MockScenario",
    "PromptTemplate",
    "ProviderRequest",
    "RetryPolicy",
    "ScenarioRule",
    "api_key_var",
    "assistant",
    "base_url",
    "conversation_text",
    "httpx_transport",
    "load_template",
    "mock_scenario_load",
    "placeholder_names",
    "render",
    "render_with_report",
    "system",
    "user",
]
