"""Uncertainty scoring and evaluation for generative QA model outputs.

The engine scores each model answer from its token log-probabilities, with
two scoring functions (length-normalized and meaning-weighted), three
uncertainty methods (confidence, Monte-Carlo entropy, semantic entropy),
and AUROC evaluation against correctness labels.
"""

from __future__ import annotations

from .config import RunConfig, build_context
from .entropy import (
    ScoringContext,
    SEDenominator,
    cluster_log_score,
    cluster_samples,
    mc_entropy,
    partition_samples,
    semantic_entropy,
    ue_for_record,
)
from .equivalence import (
    EquivalenceProvider,
    FixtureEquivalenceProvider,
    NormalizedMatchProvider,
    RemoteNLIProvider,
)
from .errors import (
    ConfigError,
    DegenerateLabelsError,
    EngineError,
    InsufficientSamplesError,
    ParseError,
    ProviderError,
    TransportError,
    ValidationError,
)
from .evaluation import UEReport, auroc, evaluate
from .importance import (
    DistributionStrategy,
    FixtureProvider,
    HeuristicProvider,
    ImportanceProvider,
    RemoteProvider,
    SegmentationMode,
    compute_importance,
    importance_for_generation,
)
from .records import (
    Generation,
    GenerationRecord,
    ImportanceProfile,
    MeaningCluster,
    Method,
    PhraseSegmentation,
    Scoring,
    TokenProb,
    UEResult,
    WeightVector,
    ingest_records,
    load_records,
    serialize_records,
)
from .scoring import (
    compute_weights,
    confidence_ue,
    length_normalized_log_score,
    log_score,
    sequence_log_prob,
    weighted_log_score,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DegenerateLabelsError",
    "DistributionStrategy",
    "EngineError",
    "EquivalenceProvider",
    "FixtureEquivalenceProvider",
    "FixtureProvider",
    "Generation",
    "GenerationRecord",
    "HeuristicProvider",
    "ImportanceProfile",
    "ImportanceProvider",
    "InsufficientSamplesError",
    "MeaningCluster",
    "Method",
    "NormalizedMatchProvider",
    "ParseError",
    "PhraseSegmentation",
    "ProviderError",
    "RemoteNLIProvider",
    "RemoteProvider",
    "RunConfig",
    "SEDenominator",
    "Scoring",
    "ScoringContext",
    "SegmentationMode",
    "TokenProb",
    "TransportError",
    "UEReport",
    "UEResult",
    "ValidationError",
    "WeightVector",
    "auroc",
    "build_context",
    "cluster_log_score",
    "cluster_samples",
    "compute_importance",
    "compute_weights",
    "confidence_ue",
    "evaluate",
    "importance_for_generation",
    "ingest_records",
    "length_normalized_log_score",
    "load_records",
    "log_score",
    "mc_entropy",
    "partition_samples",
    "semantic_entropy",
    "sequence_log_prob",
    "serialize_records",
    "ue_for_record",
    "weighted_log_score",
]
