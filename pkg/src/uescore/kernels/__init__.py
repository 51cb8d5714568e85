"""Numeric kernel dispatch.

The hot loops (per-token scoring, softmax, logsumexp, rank-sum AUROC) exist
twice: a compiled Cython extension (``_native``) and a pure-Python reference
(``_pyref``). Both perform the same sequential IEEE double operations, so
results are bit-identical; only speed differs. The backend is chosen once at
import time. Set ``UESCORE_KERNELS=pure`` or ``UESCORE_KERNELS=native`` to
force a choice (``native`` raises if the extension is not built).
"""

from __future__ import annotations

import os
from typing import Callable, Sequence

from . import _pyref

try:
    from . import _native as _native_mod
except ImportError:
    _native_mod = None

_ENV_VAR = "UESCORE_KERNELS"


class Backend:
    """Bundle of kernel callables, used directly by parity tests and benchmarks."""

    def __init__(
        self,
        name: str,
        sum_values: Callable[[Sequence[float]], float],
        mean_value: Callable[[Sequence[float]], float],
        weighted_sum: Callable[[Sequence[float], Sequence[float]], float],
        softmax: Callable[[Sequence[float], float], list[float]],
        logsumexp: Callable[[Sequence[float]], float],
        auroc_midrank: Callable[[Sequence[float], Sequence[int]], float],
    ) -> None:
        self.name = name
        self.sum_values = sum_values
        self.mean_value = mean_value
        self.weighted_sum = weighted_sum
        self.softmax = softmax
        self.logsumexp = logsumexp
        self.auroc_midrank = auroc_midrank


_PURE = Backend(
    "pure",
    _pyref.sum_values,
    _pyref.mean_value,
    _pyref.weighted_sum,
    _pyref.softmax,
    _pyref.logsumexp,
    _pyref.auroc_midrank,
)


def _build_native() -> Backend:
    import numpy as np

    def as_f64(values: Sequence[float]):
        arr = np.asarray(values, dtype=np.float64)
        if not arr.flags.c_contiguous:
            arr = np.ascontiguousarray(arr)
        return arr

    def sum_values(values: Sequence[float]) -> float:
        if len(values) == 0:
            raise ValueError("sum of an empty sequence")
        return _native_mod.sum_values(as_f64(values))

    def mean_value(values: Sequence[float]) -> float:
        if len(values) == 0:
            raise ValueError("mean of an empty sequence")
        return _native_mod.mean_value(as_f64(values))

    def weighted_sum(values: Sequence[float], weights: Sequence[float]) -> float:
        if len(values) != len(weights):
            raise ValueError(
                f"length mismatch: {len(values)} values vs {len(weights)} weights"
            )
        if len(values) == 0:
            raise ValueError("weighted sum of an empty sequence")
        return _native_mod.weighted_sum(as_f64(values), as_f64(weights))

    def softmax(values: Sequence[float], tau: float) -> list[float]:
        if tau <= 0.0:
            raise ValueError("tau must be positive")
        if len(values) == 0:
            raise ValueError("softmax of an empty sequence")
        return _native_mod.softmax(as_f64(values), tau)

    def logsumexp(values: Sequence[float]) -> float:
        if len(values) == 0:
            raise ValueError("logsumexp of an empty sequence")
        return _native_mod.logsumexp(as_f64(values))

    def auroc_midrank(values: Sequence[float], positives: Sequence[int]) -> float:
        if len(values) != len(positives):
            raise ValueError(
                f"length mismatch: {len(values)} values vs {len(positives)} labels"
            )
        arr = as_f64(values)
        flags = np.asarray([1 if p else 0 for p in positives], dtype=np.int8)
        # Stable ascending argsort gives the same permutation as the pure
        # backend's sorted(..., key=...), ties included.
        order = np.argsort(arr, kind="stable").astype(np.intp, copy=False)
        return _native_mod.auroc_over_order(arr, flags, order)

    return Backend(
        "native", sum_values, mean_value, weighted_sum, softmax, logsumexp,
        auroc_midrank,
    )


def _select() -> Backend:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice == "pure":
        return _PURE
    if choice == "native":
        if _native_mod is None:
            raise ImportError(
                f"{_ENV_VAR}=native but the compiled extension is not available"
            )
        return _build_native()
    if choice:
        raise ValueError(f"{_ENV_VAR} must be 'native' or 'pure', got {choice!r}")
    return _build_native() if _native_mod is not None else _PURE


_ACTIVE = _select()


def backend_name() -> str:
    return _ACTIVE.name


def get_backend(name: str) -> Backend:
    """Fetch a backend by name regardless of which one is active."""
    if name == "pure":
        return _PURE
    if name == "native":
        if _native_mod is None:
            raise ImportError("compiled kernel extension is not available")
        return _build_native()
    raise ValueError(f"unknown backend {name!r}")


sum_values = _ACTIVE.sum_values
mean_value = _ACTIVE.mean_value
weighted_sum = _ACTIVE.weighted_sum
softmax = _ACTIVE.softmax
logsumexp = _ACTIVE.logsumexp
auroc_midrank = _ACTIVE.auroc_midrank

__all__ = [
    "Backend",
    "auroc_midrank",
    "backend_name",
    "get_backend",
    "logsumexp",
    "mean_value",
    "softmax",
    "sum_values",
    "weighted_sum",
]
