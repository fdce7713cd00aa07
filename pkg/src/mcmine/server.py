"""HTTP service exposing single- and multi-instance code analysis for the
web UI. Stateless; student code is never logged above DEBUG level."""

from __future__ import annotations

import logging
import time
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import GatewayError, ParseError, UnauthorizedError
from .gateway import Gateway, render, user
from .miner import _template, aggregate_single, parse_miner_output
from .model import MiningPrediction, ModelConfig
from .registry import ModelRegistry, load_registry, with_mock_provider, with_reasoning

log = logging.getLogger(__name__)


class AnalyzeBody(BaseModel):
    problem: str
    code: str
    model: str
    reasoning: bool = False


class PairBody(BaseModel):
    problem: str
    code: str


class AnalyzeBagBody(BaseModel):
    pairs: list[PairBody] = Field(min_length=1)
    model: str


def _encode(pred: MiningPrediction) -> Optional[dict]:
    if not pred.is_found:
        return None
    return {"description": pred.description, "explanation": pred.explanation}


def create_app(
    registry: Optional[ModelRegistry] = None,
    gateway: Optional[Gateway] = None,
    cors_origin: str = "*",
    force_mock: bool = False,
) -> FastAPI:
    registry = registry or load_registry()
    gateway = gateway or Gateway()
    app = FastAPI(title="misconception mining service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    @app.exception_handler(UnauthorizedError)
    async def _unauthorized(request: Request, exc: UnauthorizedError):
        return JSONResponse(status_code=401, content={"error": str(exc)})

    @app.exception_handler(GatewayError)
    async def _provider_failure(request: Request, exc: GatewayError):
        # message sanitized: no request content, no provider payloads
        return JSONResponse(status_code=502, content={"error": "provider failure"})

    def _config(model_id: str, reasoning: Optional[bool] = None) -> ModelConfig:
        try:
            cfg = registry.get(model_id)
        except KeyError as exc:
            raise RequestValidationError([{"msg": str(exc)}])
        if reasoning is not None:
            cfg = with_reasoning(cfg, reasoning)
        if force_mock:
            cfg = with_mock_provider(cfg)
        return cfg

    def _analyze_one(problem_text: str, code: str, cfg: ModelConfig):
        prompt = render(
            _template("miner_single"),
            {"problem_description": problem_text, "student_code": code},
        )
        completion = gateway.complete(cfg, (user(prompt),))
        try:
            pred = parse_miner_output(completion.text)
        except ParseError:
            log.debug("unparseable miner output: %r", completion.text)
            pred = MiningPrediction.none_found()
        return pred, completion.reasoning_trace

    @app.get("/api/health")
    def health():
        return {"ok": True}

    @app.get("/api/models")
    def models():
        return [
            {"id": model_id, "provider": cfg.provider, "reasoning": cfg.reasoning.enabled}
            for model_id, cfg in registry.models.items()
        ]

    @app.post("/api/analyze")
    def analyze(body: AnalyzeBody):
        cfg = _config(body.model, body.reasoning)
        log.info("analyze request: model=%s code_bytes=%d", body.model, len(body.code))
        started = time.monotonic()
        pred, trace = _analyze_one(body.problem, body.code, cfg)
        return {
            "prediction": _encode(pred),
            "reasoning_trace": trace,
            "elapsed_ms": int((time.monotonic() - started) * 1000),
        }

    @app.post("/api/analyze-bag")
    def analyze_bag(body: AnalyzeBagBody):
        cfg = _config(body.model)
        log.info("analyze-bag request: model=%s pairs=%d", body.model, len(body.pairs))
        started = time.monotonic()
        preds = []
        for pair in body.pairs:
            pred, _ = _analyze_one(pair.problem, pair.code, cfg)
            preds.append(pred)
        aggregate = aggregate_single(preds)
        return {
            "prediction": _encode(aggregate),
            "reasoning_trace": None,
            "elapsed_ms": int((time.monotonic() - started) * 1000),
            "per_sample": [_encode(p) for p in preds],
        }

    return app


def serve(
    port: int,
    registry: Optional[ModelRegistry] = None,
    gateway: Optional[Gateway] = None,
    cors_origin: str = "*",
    force_mock: bool = False,
    host: str = "127.0.0.1",
) -> None:
    import uvicorn

    app = create_app(registry=registry, gateway=gateway, cors_origin=cors_origin, force_mock=force_mock)
    uvicorn.run(app, host=host, port=port)
