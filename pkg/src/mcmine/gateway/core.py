"""The gateway: one `complete` entry point over hosted providers and the
deterministic mock, with retries and a shared concurrency bound."""

from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

import httpx

from ..errors import (
    GatewayError,
    RateLimitedError,
    TransportError,
    UnauthorizedError,
)
from ..model import ModelConfig
from .mock import MockBackend, MockScenario
from .providers import ADAPTERS, ProviderRequest, api_key_var, base_url
from .types import Completion, Message

log = logging.getLogger(__name__)

DEFAULT_MAX_CONCURRENT = 4


@dataclass(frozen=True)
class RetryPolicy:
    attempts: int = 3
    backoff: tuple[float, ...] = (1.0, 4.0)


def httpx_transport(request: ProviderRequest) -> tuple[int, Mapping]:
    try:
        resp = httpx.post(
            request.url, headers=dict(request.headers), json=dict(request.body), timeout=120.0
        )
    except httpx.HTTPError as exc:
        raise TransportError(str(exc)) from exc
    try:
        data = resp.json()
    except ValueError:
        data = {}
    return resp.status_code, data


class Gateway:
    """Thread-safe completion access. Hosted calls share a semaphore bound;
    the mock backend needs no locking because responses are pure functions
    of the prompt text."""

    def __init__(
        self,
        scenario: Optional[MockScenario] = None,
        transport: Optional[Callable[[ProviderRequest], tuple[int, Mapping]]] = None,
        max_concurrent: int = DEFAULT_MAX_CONCURRENT,
        retry: Optional[RetryPolicy] = None,
        sleeper: Callable[[float], None] = time.sleep,
        env: Optional[Mapping[str, str]] = None,
        backends: Optional[Mapping[str, object]] = None,
    ):
        self.mock = MockBackend(scenario) if scenario is not None else None
        self._transport = transport or httpx_transport
        self._semaphore = threading.Semaphore(max_concurrent)
        self._retry = retry or RetryPolicy()
        self._sleeper = sleeper
        self._env = env if env is not None else os.environ
        self._backends = dict(backends or {})

    def complete(self, config: ModelConfig, convo: Sequence[Message]) -> Completion:
        if not convo:
            raise ValueError("conversation is empty")
        if config.provider in self._backends:
            return self._backends[config.provider].complete(config, convo)
        if config.provider == "mock":
            if self.mock is None:
                raise GatewayError("mock provider requested but no scenario is loaded")
            return self.mock.complete(config, convo)
        return self._complete_hosted(config, convo)

    def _complete_hosted(self, config: ModelConfig, convo: Sequence[Message]) -> Completion:
        adapter = ADAPTERS[config.provider]
        key_var = api_key_var(config.provider)
        api_key = self._env.get(key_var)
        if not api_key:
            raise UnauthorizedError(f"no credential: set {key_var}")
        request = adapter.build(config, convo, api_key, base_url(config.provider, self._env))

        last_error: Optional[GatewayError] = None
        for attempt in range(self._retry.attempts):
            if attempt > 0:
                backoff = self._retry.backoff
                self._sleeper(backoff[min(attempt - 1, len(backoff) - 1)])
            try:
                with self._semaphore:
                    status, data = self._transport(request)
            except TransportError as exc:
                last_error = exc
                continue
            if status in (401, 403):
                raise UnauthorizedError(f"provider rejected credential (HTTP {status})")
            if status == 429:
                last_error = RateLimitedError("provider rate limit (HTTP 429)")
                continue
            if status >= 500:
                last_error = TransportError(f"provider failure (HTTP {status})")
                continue
            if status != 200:
                raise TransportError(f"provider error (HTTP {status})")
            return adapter.parse(data)
        assert last_error is not None
        raise last_error
