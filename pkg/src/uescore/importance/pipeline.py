"""End-to-end importance pipeline.

Segment the answer into phrases, mask each phrase, score the masked
variants through a provider, turn the scores into preliminary coefficients
(1 - o), sharpen them with a temperature softmax, then distribute each
phrase's coefficient over its tokens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .. import kernels
from ..records import (
    Generation,
    GenerationRecord,
    ImportanceProfile,
    PhraseSegmentation,
)
from .chunking import segment_phrases
from .masking import build_masked_variants
from .providers import ImportanceProvider, score_variants

_SUM_TOLERANCE = 1e-9


class DistributionStrategy(str, Enum):
    """How a phrase's importance coefficient is split among its tokens."""

    EQUAL = "equal"
    MAX_UNCERTAIN = "max"
    MIN_UNCERTAIN = "min"


class SegmentationMode(str, Enum):
    PHRASE = "phrase"
    TOKEN = "token"


@dataclass(frozen=True, slots=True)
class PhraseImportance:
    """Per-phrase coefficients before and after softmax normalization."""

    prelim: tuple[float, ...]
    coeff: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.prelim) != len(self.coeff):
            raise ValueError("prelim and coeff must have equal length")
        for p in self.prelim:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"preliminary coefficient {p} outside [0, 1]")
        for c in self.coeff:
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"coefficient {c} outside [0, 1]")
        total = kernels.sum_values(self.coeff)
        if abs(total - 1.0) > _SUM_TOLERANCE:
            raise ValueError(f"coefficients sum to {total!r}, expected 1")


def normalize_importance(prelim: list[float], tau: float) -> list[float]:
    """Temperature softmax over preliminary coefficients.

    Small tau (the default is 0.01) is nearly winner-take-all; uses
    max-subtraction since exponents reach magnitude 100 at that scale.
    """
    for p in prelim:
        if not math.isfinite(p):
            raise ValueError(f"preliminary coefficient {p!r} is not finite")
    return kernels.softmax(prelim, tau)


def distribute_to_tokens(
    coeff: list[float] | tuple[float, ...],
    seg: PhraseSegmentation,
    gen: Generation,
    strategy: DistributionStrategy,
) -> ImportanceProfile:
    """Allocate phrase coefficients to tokens under the chosen strategy.

    Equal splits evenly within the phrase; MaxUncertain gives the whole
    coefficient to the phrase's lowest-logprob token, MinUncertain to the
    highest. Ties break toward the lowest token index.
    """
    if len(coeff) != seg.num_phrases:
        raise ValueError(
            f"{len(coeff)} coefficients for {seg.num_phrases} phrases"
        )
    if seg.num_tokens != gen.length:
        raise ValueError(
            f"segmentation covers {seg.num_tokens} tokens, "
            f"generation has {gen.length}"
        )
    logprobs = gen.logprobs
    values = [0.0] * gen.length
    for k, (start, end) in enumerate(seg.spans):
        if strategy is DistributionStrategy.EQUAL:
            share = coeff[k] / (end - start)
            for i in range(start, end):
                values[i] = share
            continue
        chosen = start
        for i in range(start + 1, end):
            if strategy is DistributionStrategy.MAX_UNCERTAIN:
                if logprobs[i] < logprobs[chosen]:
                    chosen = i
            elif logprobs[i] > logprobs[chosen]:
                chosen = i
        values[chosen] = coeff[k]
    return ImportanceProfile(values=tuple(values))


def importance_for_generation(
    question: str,
    gen: Generation,
    provider: ImportanceProvider,
    tau: float,
    strategy: DistributionStrategy,
    segmentation: SegmentationMode = SegmentationMode.PHRASE,
) -> ImportanceProfile:
    """Run the full pipeline for one generation."""
    if segmentation is SegmentationMode.TOKEN:
        seg = PhraseSegmentation.per_token(gen.length)
    else:
        seg = segment_phrases(gen, question)
    variants = build_masked_variants(gen, seg)
    outputs = score_variants(question, gen, variants, provider)
    prelim = [1.0 - o for o in outputs]
    coeff = normalize_importance(prelim, tau)
    phrase = PhraseImportance(prelim=tuple(prelim), coeff=tuple(coeff))
    return distribute_to_tokens(phrase.coeff, seg, gen, strategy)


def compute_importance(
    record: GenerationRecord,
    provider: ImportanceProvider,
    tau: float,
    strategy: DistributionStrategy,
    segmentation: SegmentationMode = SegmentationMode.PHRASE,
) -> ImportanceProfile:
    """Importance profile for a record's most likely answer."""
    return importance_for_generation(
        record.question, record.answer, provider, tau, strategy, segmentation
    )
