"""Answer-equivalence scoring providers.

A provider judges how well a masked answer variant still answers the
question, returning o in [0, 1]. Three implementations: a local
deterministic heuristic, a fixture lookup for tests, and a remote client
for a model-hosting sidecar.
"""

from __future__ import annotations

import json
import math
import re
from abc import ABC, abstractmethod
from pathlib import Path

from .._http import SidecarClient, number_field
from ..errors import ProviderError, ValidationError
from ..records import Generation
from .masking import MaskedVariant

_WORD_RE = re.compile(r"[a-z0-9']+")

STOPWORDS = frozenset({
    "a", "an", "the", "this", "that", "these", "those",
    "i", "me", "my", "we", "us", "our", "you", "your",
    "he", "him", "his", "she", "her", "it", "its", "they", "them", "their",
    "is", "are", "was", "were", "be", "been", "being", "am",
    "do", "does", "did", "have", "has", "had",
    "will", "would", "can", "could", "shall", "should", "may", "might",
    "must", "of", "in", "on", "at", "to", "for", "with", "by", "from",
    "as", "and", "or", "but", "not", "no", "nor", "so", "if", "then",
    "than", "too", "very", "just", "also", "there", "here",
    "who", "whom", "whose", "which", "what", "when", "where", "why", "how",
    "about", "into", "over", "under", "again", "once", "only",
    "all", "any", "both", "each", "few", "more", "most", "other", "some",
    "such", "own", "same", "s", "t",
})


def words_of(text: str) -> list[str]:
    """Lowercase alphanumeric words, in order of appearance."""
    return _WORD_RE.findall(text.lower())


def content_words(text: str) -> list[str]:
    return [w for w in words_of(text) if w not in STOPWORDS]


class ImportanceProvider(ABC):
    """Scores a masked variant's answer-equivalence to the original."""

    @abstractmethod
    def score(self, question: str, original_text: str, masked_text: str) -> float:
        """Return o in [0, 1]: 1 = meaning fully preserved, 0 = destroyed."""


class HeuristicProvider(ImportanceProvider):
    """Local deterministic stand-in for a learned answer-equivalence model.

    o = fraction of the original answer's question-salient content words
    (content words not appearing in the question) that survive in the masked
    variant; o = 1 when the answer has no such words. Masking the
    answer-bearing phrase drops o, masking filler does not.
    """

    def score(self, question: str, original_text: str, masked_text: str) -> float:
        question_words = set(words_of(question))
        salient = [
            w
            for w in dict.fromkeys(content_words(original_text))
            if w not in question_words
        ]
        if not salient:
            return 1.0
        present = set(words_of(masked_text))
        kept = sum(1 for w in salient if w in present)
        return kept / len(salient)


class FixtureProvider(ImportanceProvider):
    """Lookup table from masked_text to o, for reproducible tests.

    Lookups are strict: a variant absent from the table is an error, not a
    default, so a stale fixture cannot silently skew importance.
    """

    def __init__(self, scores: dict[str, float]) -> None:
        for key, value in scores.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(
                    f"fixture score for {key!r} is not a number"
                )
            if not 0.0 <= float(value) <= 1.0:
                raise ValidationError(
                    f"fixture score for {key!r} is {value}, outside [0, 1]"
                )
        self._scores = {key: float(value) for key, value in scores.items()}

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureProvider":
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ValidationError(
                f"importance fixture {path} must be an object mapping "
                "masked text to scores"
            )
        return cls(data)

    def score(self, question: str, original_text: str, masked_text: str) -> float:
        try:
            return self._scores[masked_text]
        except KeyError:
            raise ProviderError(
                f"importance fixture has no entry for masked text "
                f"{masked_text!r}"
            ) from None


class RemoteProvider(ImportanceProvider):
    """Client for the sidecar's answer-equivalence endpoint."""

    def __init__(self, client: SidecarClient) -> None:
        self._client = client

    def score(self, question: str, original_text: str, masked_text: str) -> float:
        data = self._client.post_json(
            "/v1/bem",
            {
                "question": question,
                "reference": original_text,
                "candidate": masked_text,
            },
        )
        return number_field(data, "score", "answer-equivalence response")


def score_variants(
    question: str,
    original: Generation,
    variants: list[MaskedVariant],
    provider: ImportanceProvider,
) -> list[float]:
    """Score each variant in order, enforcing the [0, 1] output contract."""
    scores: list[float] = []
    for variant in variants:
        o = provider.score(question, original.text, variant.masked_text)
        if (
            isinstance(o, bool)
            or not isinstance(o, (int, float))
            or not math.isfinite(float(o))
            or not 0.0 <= float(o) <= 1.0
        ):
            raise ValidationError(
                f"provider returned {o!r} for phrase {variant.phrase_index}; "
                "equivalence scores must lie in [0, 1]"
            )
        scores.append(float(o))
    return scores
