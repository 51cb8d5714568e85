"""Sequence scoring functions.

All scores live in log space (natural log, nats). Probability-space values
appear only where cluster scores are aggregated and in reports; this avoids
underflow on long generations.
"""

from __future__ import annotations

from . import kernels
from .records import (
    Generation,
    ImportanceProfile,
    Method,
    Scoring,
    UEResult,
    WeightVector,
)


def sequence_log_prob(gen: Generation) -> float:
    """Joint log-probability of the generation: sum of token logprobs."""
    return kernels.sum_values(gen.logprobs)


def length_normalized_log_score(gen: Generation) -> float:
    """Mean token logprob, i.e. log of the geometric-mean token probability.

    Gives every token equal weight 1/L, so sequences of different lengths
    are comparable.
    """
    return kernels.mean_value(gen.logprobs)


def compute_weights(importance: ImportanceProfile, length: int) -> WeightVector:
    """Blend importance with the uniform distribution: w_l = 1/(2L) + u_l/2.

    The convex combination keeps every token's weight at least half its
    length-normalized share, so no token is silenced entirely.
    """
    if len(importance.values) != length:
        raise ValueError(
            f"importance profile has {len(importance.values)} entries "
            f"for length {length}"
        )
    half_uniform = 0.5 / length
    weights = tuple(half_uniform + u / 2.0 for u in importance.values)
    return WeightVector(weights=weights, length=length)


def weighted_log_score(gen: Generation, weights: WeightVector) -> float:
    """Importance-weighted log score: sum of w_l * logprob_l.

    With uniform importance this reduces exactly to the length-normalized
    score; concentrated importance pulls the score toward the logprobs of
    the tokens that carry the answer's meaning.
    """
    if weights.length != gen.length:
        raise ValueError(
            f"weight vector of length {weights.length} applied to "
            f"generation of length {gen.length}"
        )
    return kernels.weighted_sum(gen.logprobs, weights.weights)


def log_score(
    gen: Generation,
    scoring: Scoring,
    importance: ImportanceProfile | None = None,
) -> float:
    """Score a generation under the requested scoring function."""
    if scoring is Scoring.LENGTH_NORMALIZED:
        return length_normalized_log_score(gen)
    if scoring is Scoring.MARS:
        if importance is None:
            raise ValueError("weighted scoring requires an importance profile")
        return weighted_log_score(gen, compute_weights(importance, gen.length))
    raise ValueError(f"unknown scoring {scoring!r}")


def confidence_ue(log_score_value: float, scoring: Scoring) -> UEResult:
    """Negative log score of the most likely answer; higher = more uncertain.

    Negating the log score rather than the probability-space score is safe
    for ranking: AUROC is invariant under strictly monotone transforms.
    """
    return UEResult(
        method=Method.CONFIDENCE, scoring=scoring, value=-log_score_value
    )
