"""Meaning-equivalence providers for clustering sampled generations.

A provider decides whether two generated answers mean the same thing in the
context of the question. Decisions must be symmetric. Three
implementations: normalized string match (local), fixture pairs (tests),
and bidirectional entailment through the sidecar's NLI endpoint.
"""

from __future__ import annotations

import json
import re
from abc import ABC, abstractmethod
from pathlib import Path

from ._http import SidecarClient, number_field
from .errors import ValidationError

_PUNCT_RE = re.compile(r"[^\w\s]")


def normalize_text(text: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace."""
    lowered = _PUNCT_RE.sub("", text.lower())
    return " ".join(lowered.split())


class EquivalenceProvider(ABC):
    @abstractmethod
    def equivalent(self, question: str, text_a: str, text_b: str) -> bool:
        """Symmetric: equivalent(q, a, b) == equivalent(q, b, a)."""


class NormalizedMatchProvider(EquivalenceProvider):
    """Equality after normalization; a desk-scale stand-in for entailment."""

    def equivalent(self, question: str, text_a: str, text_b: str) -> bool:
        return normalize_text(text_a) == normalize_text(text_b)


class FixtureEquivalenceProvider(EquivalenceProvider):
    """Declared-equivalent text pairs, closed under symmetry at load.

    Identical texts are always equivalent even without a declared pair;
    any meaning relation is reflexive.
    """

    def __init__(self, pairs: list[tuple[str, str]]) -> None:
        closed: set[tuple[str, str]] = set()
        for a, b in pairs:
            closed.add((a, b))
            closed.add((b, a))
        self._pairs = frozenset(closed)

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureEquivalenceProvider":
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, list):
            raise ValidationError(
                f"equivalence fixture {path} must be a list of "
                "{{text_a, text_b}} pairs"
            )
        pairs: list[tuple[str, str]] = []
        for i, entry in enumerate(data):
            if (
                not isinstance(entry, dict)
                or not isinstance(entry.get("text_a"), str)
                or not isinstance(entry.get("text_b"), str)
            ):
                raise ValidationError(
                    f"equivalence fixture {path} entry {i} must have string "
                    "fields text_a and text_b"
                )
            pairs.append((entry["text_a"], entry["text_b"]))
        return cls(pairs)

    def equivalent(self, question: str, text_a: str, text_b: str) -> bool:
        return text_a == text_b or (text_a, text_b) in self._pairs


class RemoteNLIProvider(EquivalenceProvider):
    """Bidirectional entailment through the sidecar.

    Two answers are equivalent when entailment holds in both directions at
    or above the threshold. The question is prepended to each text so the
    entailment judgment is made in context; the sidecar returns raw
    directional scores and the threshold is applied here.
    """

    def __init__(self, client: SidecarClient, threshold: float = 0.5) -> None:
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"threshold {threshold} outside [0, 1]")
        self._client = client
        self.threshold = threshold

    def _entail(self, premise: str, hypothesis: str) -> float:
        data = self._client.post_json(
            "/v1/nli", {"premise": premise, "hypothesis": hypothesis}
        )
        entail = number_field(data, "entail", "entailment response")
        if not 0.0 <= entail <= 1.0:
            raise ValidationError(
                f"entailment score {entail} outside [0, 1]"
            )
        return entail

    def equivalent(self, question: str, text_a: str, text_b: str) -> bool:
        contextual_a = f"{question} {text_a}"
        contextual_b = f"{question} {text_b}"
        forward = self._entail(contextual_a, contextual_b)
        backward = self._entail(contextual_b, contextual_a)
        return forward >= self.threshold and backward >= self.threshold
