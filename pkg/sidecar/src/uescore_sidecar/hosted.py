"""Transformers-backed scoring models.

Hosts any sequence-pair classification checkpoint. The answer-equivalence
endpoint encodes "question reference" against the candidate; entailment
encodes premise against hypothesis. Strings pass through untouched (no
normalization), so what the engine sends is exactly what the model sees.

Either model may be absent; requests for an absent one get a 503 through
ModelUnavailable. Inference is serialized with a lock: the contract is
correctness and statelessness, not latency.
"""

from __future__ import annotations

import threading

from .app import ModelUnavailable

# label names (lowercased substring match) treated as the positive class
_POSITIVE_LABELS = ("entail", "equivalent", "correct", "yes", "duplicate")


class _PairScorer:
    def __init__(self, model_name: str) -> None:
        import torch
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        self._torch = torch
        self._tokenizer = AutoTokenizer.from_pretrained(model_name)
        self._model = AutoModelForSequenceClassification.from_pretrained(model_name)
        self._model.eval()
        self._positive = self._positive_index()

    def _positive_index(self) -> int:
        id2label = getattr(self._model.config, "id2label", None) or {}
        for index, label in sorted(id2label.items()):
            name = str(label).lower()
            if any(mark in name for mark in _POSITIVE_LABELS):
                return int(index)
        # unnamed heads: highest index, matching the common binary convention
        return max(int(i) for i in id2label) if id2label else -1

    def score(self, text: str, text_pair: str) -> float:
        encoded = self._tokenizer(
            text, text_pair, truncation=True, return_tensors="pt"
        )
        with self._torch.no_grad():
            logits = self._model(**encoded).logits[0]
        if logits.shape[-1] == 1:
            return float(self._torch.sigmoid(logits[0]))
        probs = self._torch.softmax(logits, dim=-1)
        return float(probs[self._positive])


class HostedBackend:
    name = "hosted"

    def __init__(self, bem_model: str | None, nli_model: str | None) -> None:
        self._bem_name = bem_model
        self._nli_name = nli_model
        self._bem: _PairScorer | None = None
        self._nli: _PairScorer | None = None
        self._lock = threading.Lock()

    def load(self) -> None:
        """Load configured models eagerly; call before serving."""
        if self._bem_name:
            self._bem = _PairScorer(self._bem_name)
        if self._nli_name:
            self._nli = _PairScorer(self._nli_name)

    def bem(self, question: str, reference: str, candidate: str) -> float:
        if self._bem is None:
            raise ModelUnavailable("answer-equivalence model not loaded")
        with self._lock:
            return self._bem.score(f"{question} {reference}", candidate)

    def nli(self, premise: str, hypothesis: str) -> float:
        if self._nli is None:
            raise ModelUnavailable("entailment model not loaded")
        with self._lock:
            return self._nli.score(premise, hypothesis)
