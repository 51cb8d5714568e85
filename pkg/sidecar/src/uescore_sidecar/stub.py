"""Deterministic heuristic scoring for wire-contract testing.

The rules here are deliberately duplicated from the engine's local
providers rather than imported: the sidecar is a separate deployable that
must not depend on engine internals, and the engine's test suite pins the
two copies together. Any divergence fails the stub-vs-local equivalence
test, so the duplication cannot drift silently.
"""

from __future__ import annotations

import re

_WORD_RE = re.compile(r"[a-z0-9']+")
_PUNCT_RE = re.compile(r"[^\w\s]")

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
    return _WORD_RE.findall(text.lower())


def content_words(text: str) -> list[str]:
    return [w for w in words_of(text) if w not in STOPWORDS]


def bem_score(question: str, reference: str, candidate: str) -> float:
    """Fraction of the reference's question-salient content words that
    survive in the candidate; 1.0 when the reference has no such words."""
    question_words = set(words_of(question))
    salient = [
        w
        for w in dict.fromkeys(content_words(reference))
        if w not in question_words
    ]
    if not salient:
        return 1.0
    present = set(words_of(candidate))
    kept = sum(1 for w in salient if w in present)
    return kept / len(salient)


def normalize_text(text: str) -> str:
    lowered = _PUNCT_RE.sub("", text.lower())
    return " ".join(lowered.split())


def nli_entail(premise: str, hypothesis: str) -> float:
    """Normalized string match as a hard 0/1 entailment stand-in."""
    return 1.0 if normalize_text(premise) == normalize_text(hypothesis) else 0.0


class StubBackend:
    """Serves the heuristic scores; always ready, fully reentrant."""

    name = "stub"

    def bem(self, question: str, reference: str, candidate: str) -> float:
        return bem_score(question, reference, candidate)

    def nli(self, premise: str, hypothesis: str) -> float:
        return nli_entail(premise, hypothesis)
