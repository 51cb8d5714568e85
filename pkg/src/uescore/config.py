"""Run configuration: parsing, validation, and provider construction.

A run is fully determined by (input file, RunConfig). Configs come from a
JSON file, from CLI flag overrides (flags win), or from defaults. The
defaults are the reference setup: softmax temperature 0.01, equal
distribution, phrase segmentation, all methods and both scoring functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from ._http import SidecarClient
from .entropy import (
    CANONICAL_METHODS,
    CANONICAL_SCORINGS,
    ScoringContext,
    SEDenominator,
)
from .equivalence import (
    EquivalenceProvider,
    FixtureEquivalenceProvider,
    NormalizedMatchProvider,
    RemoteNLIProvider,
)
from .errors import ConfigError, ValidationError
from .importance import (
    DistributionStrategy,
    FixtureProvider,
    HeuristicProvider,
    ImportanceProvider,
    RemoteProvider,
    SegmentationMode,
)
from .records import Method, Scoring

_IMPORTANCE_KINDS = ("heuristic", "fixture", "remote")
_EQUIVALENCE_KINDS = ("match", "fixture", "remote")


def parse_provider_spec(
    spec: str, kinds: tuple[str, ...], what: str
) -> tuple[str, str | None]:
    """Split "kind" or "kind:argument" and check the kind is known."""
    kind, sep, arg = spec.partition(":")
    if kind not in kinds:
        raise ConfigError(
            f"unknown {what} provider {kind!r}; expected one of "
            f"{', '.join(kinds)}"
        )
    if kind in ("fixture", "remote"):
        if not sep or not arg:
            shape = f"{kind}:PATH" if kind == "fixture" else f"{kind}:URL"
            raise ConfigError(
                f"{what} provider {kind!r} needs an argument: {shape}"
            )
        return kind, arg
    if sep:
        raise ConfigError(f"{what} provider {kind!r} takes no argument")
    return kind, None


def _parse_methods(raw: Any) -> tuple[Method, ...]:
    if isinstance(raw, str):
        raw = [part.strip() for part in raw.split(",") if part.strip()]
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ConfigError("methods must be a non-empty list of method names")
    requested = set()
    for name in raw:
        try:
            requested.add(Method(name))
        except ValueError:
            raise ConfigError(
                f"unknown method {name!r}; expected one of "
                f"{', '.join(m.value for m in CANONICAL_METHODS)}"
            ) from None
    return tuple(m for m in CANONICAL_METHODS if m in requested)


def _parse_scorings(raw: Any) -> tuple[Scoring, ...]:
    if isinstance(raw, str):
        raw = [part.strip() for part in raw.split(",") if part.strip()]
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ConfigError("scorings must be a non-empty list of scoring names")
    requested = set()
    for name in raw:
        try:
            requested.add(Scoring(name))
        except ValueError:
            raise ConfigError(
                f"unknown scoring {name!r}; expected one of "
                f"{', '.join(s.value for s in CANONICAL_SCORINGS)}"
            ) from None
    return tuple(s for s in CANONICAL_SCORINGS if s in requested)


def _parse_enum(enum_cls: type, raw: Any, what: str):
    try:
        return enum_cls(raw)
    except ValueError:
        raise ConfigError(
            f"unknown {what} {raw!r}; expected one of "
            f"{', '.join(member.value for member in enum_cls)}"
        ) from None


@dataclass(frozen=True, slots=True)
class RunConfig:
    tau: float = 0.01
    strategy: DistributionStrategy = DistributionStrategy.EQUAL
    segmentation: SegmentationMode = SegmentationMode.PHRASE
    importance_provider: str | None = "heuristic"
    equivalence_provider: str = "match"
    methods: tuple[Method, ...] = CANONICAL_METHODS
    scorings: tuple[Scoring, ...] = CANONICAL_SCORINGS
    se_denominator: SEDenominator = SEDenominator.CLUSTERS
    nli_threshold: float = 0.5
    # Producer-side sampling setup, recorded for provenance; the engine
    # never samples.
    sample_count: int = 5
    sample_temperature: float = 0.5
    # Execution detail: excluded from the config echo so reports are
    # byte-identical across --jobs settings.
    parallelism: int = 1

    def __post_init__(self) -> None:
        if not self.tau > 0:
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if not 0.0 <= self.nli_threshold <= 1.0:
            raise ConfigError(
                f"nli_threshold must lie in [0, 1], got {self.nli_threshold}"
            )
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        if self.sample_count < 1:
            raise ConfigError("sample_count must be at least 1")
        if not self.methods:
            raise ConfigError("at least one method is required")
        if not self.scorings:
            raise ConfigError("at least one scoring function is required")
        if self.importance_provider is not None:
            parse_provider_spec(
                self.importance_provider, _IMPORTANCE_KINDS, "importance"
            )
        parse_provider_spec(
            self.equivalence_provider, _EQUIVALENCE_KINDS, "equivalence"
        )
        if Scoring.MARS in self.scorings and self.importance_provider is None:
            raise ConfigError(
                "meaning-weighted scoring requires an importance provider"
            )

    def to_dict(self) -> dict[str, Any]:
        """Config echo for reports. Deliberately omits parallelism."""
        return {
            "tau": self.tau,
            "strategy": self.strategy.value,
            "segmentation": self.segmentation.value,
            "importance_provider": self.importance_provider,
            "equivalence_provider": self.equivalence_provider,
            "methods": [m.value for m in self.methods],
            "scorings": [s.value for s in self.scorings],
            "se_denominator": self.se_denominator.value,
            "nli_threshold": self.nli_threshold,
            "sample_count": self.sample_count,
            "sample_temperature": self.sample_temperature,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be an object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        kwargs: dict[str, Any] = dict(data)
        if "strategy" in kwargs:
            kwargs["strategy"] = _parse_enum(
                DistributionStrategy, kwargs["strategy"], "strategy"
            )
        if "segmentation" in kwargs:
            kwargs["segmentation"] = _parse_enum(
                SegmentationMode, kwargs["segmentation"], "segmentation"
            )
        if "se_denominator" in kwargs:
            kwargs["se_denominator"] = _parse_enum(
                SEDenominator, kwargs["se_denominator"], "se_denominator"
            )
        if "methods" in kwargs:
            kwargs["methods"] = _parse_methods(kwargs["methods"])
        if "scorings" in kwargs:
            kwargs["scorings"] = _parse_scorings(kwargs["scorings"])
        for key in ("tau", "nli_threshold", "sample_temperature"):
            if key in kwargs:
                value = kwargs[key]
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ConfigError(f"{key} must be a number")
                kwargs[key] = float(value)
        for key in ("sample_count", "parallelism"):
            if key in kwargs:
                value = kwargs[key]
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ConfigError(f"{key} must be an integer")
        if "importance_provider" in kwargs:
            value = kwargs["importance_provider"]
            if value is not None and not isinstance(value, str):
                raise ConfigError("importance_provider must be a string or null")
        if "equivalence_provider" in kwargs:
            if not isinstance(kwargs["equivalence_provider"], str):
                raise ConfigError("equivalence_provider must be a string")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def override(self, **changes: Any) -> "RunConfig":
        """Replace fields, re-running validation; None values are ignored."""
        effective = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **effective) if effective else self


def build_importance_provider(spec: str) -> ImportanceProvider:
    kind, arg = parse_provider_spec(spec, _IMPORTANCE_KINDS, "importance")
    if kind == "heuristic":
        return HeuristicProvider()
    if kind == "fixture":
        try:
            return FixtureProvider.from_file(arg)
        except OSError as exc:
            raise ConfigError(
                f"cannot read importance fixture {arg}: {exc}"
            ) from exc
        except (ValidationError, json.JSONDecodeError) as exc:
            raise ConfigError(f"bad importance fixture {arg}: {exc}") from exc
    return RemoteProvider(SidecarClient(arg))


def build_equivalence_provider(
    spec: str, nli_threshold: float
) -> EquivalenceProvider:
    kind, arg = parse_provider_spec(spec, _EQUIVALENCE_KINDS, "equivalence")
    if kind == "match":
        return NormalizedMatchProvider()
    if kind == "fixture":
        try:
            return FixtureEquivalenceProvider.from_file(arg)
        except OSError as exc:
            raise ConfigError(
                f"cannot read equivalence fixture {arg}: {exc}"
            ) from exc
        except (ValidationError, json.JSONDecodeError) as exc:
            raise ConfigError(f"bad equivalence fixture {arg}: {exc}") from exc
    return RemoteNLIProvider(SidecarClient(arg), threshold=nli_threshold)


def build_context(config: RunConfig) -> ScoringContext:
    """Resolve provider specs into live providers.

    Providers are only built when the requested methods need them, so a
    length-normalized-only run never touches fixture files or the network.
    """
    importance = None
    if Scoring.MARS in config.scorings:
        importance = build_importance_provider(config.importance_provider)
    equivalence = None
    if Method.SEMANTIC_ENTROPY in config.methods:
        equivalence = build_equivalence_provider(
            config.equivalence_provider, config.nli_threshold
        )
    return ScoringContext(
        methods=frozenset(config.methods),
        scorings=frozenset(config.scorings),
        tau=config.tau,
        strategy=config.strategy,
        segmentation=config.segmentation,
        se_denominator=config.se_denominator,
        importance_provider=importance,
        equivalence_provider=equivalence,
    )
