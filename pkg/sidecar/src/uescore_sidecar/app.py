"""FastAPI application: request schemas, auth, and the two scoring routes.

Route handlers are plain functions, so the framework runs them on its
worker thread pool and a slow model never blocks the event loop; backends
are responsible for their own internal locking.
"""

from __future__ import annotations

import os
from typing import Annotated, Protocol

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, StringConstraints

TOKEN_ENV_VAR = "UESCORE_SIDECAR_TOKEN"

NonEmpty = Annotated[str, StringConstraints(min_length=1)]


class ModelUnavailable(RuntimeError):
    """Raised by a backend when the requested model is not loaded."""


class ScoringBackend(Protocol):
    name: str

    def bem(self, question: str, reference: str, candidate: str) -> float: ...

    def nli(self, premise: str, hypothesis: str) -> float: ...


class BemRequest(BaseModel):
    # strict: no type coercion; extra keys are schema violations
    model_config = ConfigDict(extra="forbid", strict=True)

    question: NonEmpty
    reference: NonEmpty
    candidate: str  # may be empty: a fully masked answer


class NliRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    premise: NonEmpty
    hypothesis: NonEmpty


def _describe(exc: RequestValidationError) -> str:
    parts = []
    for err in exc.errors()[:5]:
        loc = ".".join(str(p) for p in err.get("loc", ()))
        parts.append(f"{loc}: {err.get('msg', 'invalid')}")
    return "; ".join(parts) or "invalid request"


def create_app(backend: ScoringBackend) -> FastAPI:
    app = FastAPI(
        title="uescore sidecar",
        docs_url=None,
        redoc_url=None,
        openapi_url=None,
    )
    token = os.environ.get(TOKEN_ENV_VAR) or None

    @app.exception_handler(RequestValidationError)
    async def schema_violation(request: Request, exc: RequestValidationError):
        # malformed bodies are client errors, not unprocessable entities
        return JSONResponse(
            status_code=400,
            content={"error": f"schema violation: {_describe(exc)}"},
        )

    @app.middleware("http")
    async def require_bearer(request: Request, call_next):
        # health stays open so probes work without credentials
        if token and request.url.path != "/healthz":
            if request.headers.get("authorization") != f"Bearer {token}":
                return JSONResponse(
                    status_code=401,
                    content={"error": "missing or invalid bearer token"},
                )
        return await call_next(request)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "backend": backend.name}

    @app.post("/v1/bem")
    def bem(req: BemRequest):
        try:
            score = backend.bem(req.question, req.reference, req.candidate)
        except ModelUnavailable as exc:
            return JSONResponse(status_code=503, content={"error": str(exc)})
        return {"score": score}

    @app.post("/v1/nli")
    def nli(req: NliRequest):
        try:
            entail = backend.nli(req.premise, req.hypothesis)
        except ModelUnavailable as exc:
            return JSONResponse(status_code=503, content={"error": str(exc)})
        return {"entail": entail}

    return app
