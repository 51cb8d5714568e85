"""HTTP client for the optional scoring sidecar.

Transport faults and 5xx responses are retried a bounded number of times and
then surface as TransportError (retriable); schema problems and other HTTP
errors are ProviderError (non-retriable). The engine works without any
sidecar; this module is only imported by the remote providers.
"""

from __future__ import annotations

import math
import os
import time
from typing import Any

import httpx

from .errors import ProviderError, TransportError

TOKEN_ENV_VAR = "UESCORE_SIDECAR_TOKEN"

_RETRIABLE_STATUS = (502, 503, 504)


class SidecarClient:
    def __init__(
        self,
        base_url: str,
        *,
        timeout: float = 10.0,
        max_attempts: int = 3,
        retry_wait: float = 0.1,
        token: str | None = None,
    ) -> None:
        if max_attempts < 1:
            raise ValueError("max_attempts must be at least 1")
        if token is None:
            token = os.environ.get(TOKEN_ENV_VAR) or None
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        self.base_url = base_url
        self._max_attempts = max_attempts
        self._retry_wait = retry_wait
        self._client = httpx.Client(
            base_url=base_url, timeout=timeout, headers=headers
        )

    def post_json(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        last_fault = ""
        for attempt in range(self._max_attempts):
            if attempt and self._retry_wait > 0:
                time.sleep(self._retry_wait)
            try:
                response = self._client.post(path, json=payload)
            except httpx.HTTPError as exc:
                last_fault = f"{type(exc).__name__}: {exc}"
                continue
            if response.status_code in _RETRIABLE_STATUS:
                last_fault = f"HTTP {response.status_code}"
                continue
            if response.status_code != 200:
                raise ProviderError(
                    f"sidecar returned HTTP {response.status_code} for {path}: "
                    f"{response.text[:200]}"
                )
            try:
                data = response.json()
            except ValueError as exc:
                raise ProviderError(
                    f"sidecar returned unparseable body for {path}"
                ) from exc
            if not isinstance(data, dict):
                raise ProviderError(
                    f"sidecar returned non-object body for {path}"
                )
            return data
        raise TransportError(
            f"sidecar at {self.base_url} unreachable after "
            f"{self._max_attempts} attempts ({last_fault})"
        )

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "SidecarClient":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


def number_field(data: dict[str, Any], key: str, context: str) -> float:
    """Extract a finite numeric field from a response body."""
    value = data.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProviderError(f"{context}: field {key!r} missing or non-numeric")
    value = float(value)
    if not math.isfinite(value):
        raise ProviderError(f"{context}: field {key!r} is not finite")
    return value
