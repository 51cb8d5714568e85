"""Meaning-importance pipeline: segmentation, masking, scoring, distribution."""

from __future__ import annotations

from .chunking import segment_phrases
from .masking import MaskedVariant, build_masked_variants
from .pipeline import (
    DistributionStrategy,
    PhraseImportance,
    SegmentationMode,
    compute_importance,
    distribute_to_tokens,
    importance_for_generation,
    normalize_importance,
)
from .providers import (
    FixtureProvider,
    HeuristicProvider,
    ImportanceProvider,
    RemoteProvider,
    score_variants,
)

__all__ = [
    "DistributionStrategy",
    "FixtureProvider",
    "HeuristicProvider",
    "ImportanceProvider",
    "MaskedVariant",
    "PhraseImportance",
    "RemoteProvider",
    "SegmentationMode",
    "build_masked_variants",
    "compute_importance",
    "distribute_to_tokens",
    "importance_for_generation",
    "normalize_importance",
    "score_variants",
    "segment_phrases",
]
