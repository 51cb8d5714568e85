"""Sampling-based uncertainty: Monte-Carlo entropy and semantic entropy.

Semantic entropy clusters the sampled generations by meaning, scores each
cluster as the probability-space sum of its members (log-sum-exp in log
space), and averages the negative cluster log scores.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from . import kernels
from .equivalence import EquivalenceProvider
from .errors import ConfigError, InsufficientSamplesError
from .importance import (
    DistributionStrategy,
    ImportanceProvider,
    SegmentationMode,
    importance_for_generation,
)
from .records import (
    Generation,
    GenerationRecord,
    MeaningCluster,
    Method,
    Scoring,
    UEResult,
)
from .scoring import confidence_ue, log_score

CANONICAL_METHODS = (Method.CONFIDENCE, Method.ENTROPY, Method.SEMANTIC_ENTROPY)
CANONICAL_SCORINGS = (Scoring.LENGTH_NORMALIZED, Scoring.MARS)

_SAMPLING_METHODS = frozenset({Method.ENTROPY, Method.SEMANTIC_ENTROPY})


class SEDenominator(str, Enum):
    """Semantic entropy averages over clusters or over samples.

    The two conventions coincide only for all-singleton clusterings; both
    are supported because either may be wanted for comparability.
    """

    CLUSTERS = "clusters"
    SAMPLES = "samples"


def mc_entropy(log_scores: list[float]) -> float:
    """Negative mean log score over sampled generations."""
    return -kernels.mean_value(log_scores)


def cluster_log_score(member_log_scores: list[float]) -> float:
    """Log of the probability-space sum of member scores (log-sum-exp)."""
    return kernels.logsumexp(member_log_scores)


def partition_samples(
    question: str,
    samples: tuple[Generation, ...] | list[Generation],
    provider: EquivalenceProvider,
) -> list[tuple[int, ...]]:
    """Greedy meaning clustering of sample indices.

    Each sample, in index order, is compared against the lowest-index
    member of every existing cluster and joins the first match; otherwise
    it opens a new cluster. One representative comparison per cluster keeps
    the provider-call budget quadratic in the worst case.
    """
    if not samples:
        raise ValueError("cannot cluster an empty sample list")
    clusters: list[list[int]] = []
    for index, sample in enumerate(samples):
        for members in clusters:
            representative = samples[members[0]]
            if provider.equivalent(question, representative.text, sample.text):
                members.append(index)
                break
        else:
            clusters.append([index])
    return [tuple(members) for members in clusters]


def build_clusters(
    partition: list[tuple[int, ...]], log_scores: list[float]
) -> list[MeaningCluster]:
    """Attach log-sum-exp scores to a partition of sample indices."""
    clusters = []
    for members in partition:
        scores = [log_scores[i] for i in members]
        clusters.append(
            MeaningCluster(
                member_indices=frozenset(members),
                log_score=cluster_log_score(scores),
            )
        )
    return clusters


def cluster_samples(
    question: str,
    samples: tuple[Generation, ...] | list[Generation],
    provider: EquivalenceProvider,
    log_scores: list[float],
) -> list[MeaningCluster]:
    """Partition samples by meaning and score each cluster.

    ``log_scores[i]`` is the (length-normalized or importance-weighted) log
    score of ``samples[i]`` under the scoring function in force.
    """
    if len(log_scores) != len(samples):
        raise ValueError(
            f"{len(log_scores)} log scores for {len(samples)} samples"
        )
    return build_clusters(partition_samples(question, samples, provider), log_scores)


def semantic_entropy(
    clusters: list[MeaningCluster],
    denominator: SEDenominator = SEDenominator.CLUSTERS,
) -> float:
    """Negative average of cluster log scores."""
    if not clusters:
        raise ValueError("semantic entropy of an empty clustering")
    values = [cluster.log_score for cluster in clusters]
    if denominator is SEDenominator.CLUSTERS:
        return -kernels.mean_value(values)
    total_members = sum(len(cluster.member_indices) for cluster in clusters)
    return -(kernels.sum_values(values) / total_members)


@dataclass(frozen=True, slots=True)
class ScoringContext:
    """Resolved runtime configuration: live providers plus scoring knobs."""

    methods: frozenset[Method]
    scorings: frozenset[Scoring]
    tau: float
    strategy: DistributionStrategy
    segmentation: SegmentationMode
    se_denominator: SEDenominator
    importance_provider: ImportanceProvider | None
    equivalence_provider: EquivalenceProvider | None

    def restricted_to(self, methods: frozenset[Method]) -> "ScoringContext":
        return replace(self, methods=methods)


def _sample_profiles(record, ctx):
    return [
        importance_for_generation(
            record.question,
            sample,
            ctx.importance_provider,
            ctx.tau,
            ctx.strategy,
            ctx.segmentation,
        )
        for sample in record.samples
    ]


def ue_for_record(record: GenerationRecord, ctx: ScoringContext) -> list[UEResult]:
    """All requested uncertainty scores for one record.

    Results come out in canonical order: method-major (confidence, entropy,
    semantic entropy), scoring-minor (length-normalized first). Per-sample
    importance profiles and the meaning partition are computed once and
    shared across methods.
    """
    methods = [m for m in CANONICAL_METHODS if m in ctx.methods]
    scorings = [s for s in CANONICAL_SCORINGS if s in ctx.scorings]
    if not methods or not scorings:
        return []
    wants_sampling = any(m in _SAMPLING_METHODS for m in methods)
    if wants_sampling and not record.samples:
        raise InsufficientSamplesError(record.id)
    wants_mars = Scoring.MARS in scorings
    if wants_mars and ctx.importance_provider is None:
        raise ConfigError(
            "meaning-weighted scoring requested without an importance provider"
        )

    answer_importance = None
    if wants_mars and Method.CONFIDENCE in methods:
        answer_importance = importance_for_generation(
            record.question,
            record.answer,
            ctx.importance_provider,
            ctx.tau,
            ctx.strategy,
            ctx.segmentation,
        )
    sample_scores: dict[Scoring, list[float]] = {}
    if wants_sampling:
        profiles = _sample_profiles(record, ctx) if wants_mars else None
        for scoring in scorings:
            sample_scores[scoring] = [
                log_score(
                    sample,
                    scoring,
                    profiles[i] if scoring is Scoring.MARS else None,
                )
                for i, sample in enumerate(record.samples)
            ]
    partition = None
    if Method.SEMANTIC_ENTROPY in methods:
        if ctx.equivalence_provider is None:
            raise ConfigError(
                "semantic entropy requested without an equivalence provider"
            )
        partition = partition_samples(
            record.question, record.samples, ctx.equivalence_provider
        )

    results: list[UEResult] = []
    for method in methods:
        for scoring in scorings:
            if method is Method.CONFIDENCE:
                importance = (
                    answer_importance if scoring is Scoring.MARS else None
                )
                value = log_score(record.answer, scoring, importance)
                results.append(confidence_ue(value, scoring))
            elif method is Method.ENTROPY:
                results.append(
                    UEResult(
                        method=Method.ENTROPY,
                        scoring=scoring,
                        value=mc_entropy(sample_scores[scoring]),
                    )
                )
            else:
                clusters = build_clusters(partition, sample_scores[scoring])
                results.append(
                    UEResult(
                        method=Method.SEMANTIC_ENTROPY,
                        scoring=scoring,
                        value=semantic_entropy(clusters, ctx.se_denominator),
                    )
                )
    return results
