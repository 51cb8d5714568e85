"""Domain model for scored QA generations, plus line-delimited ingestion.

A producer (the system that actually ran the language model) emits one JSON
object per line describing a question, the most likely answer with per-token
log-probabilities, optional sampled alternative answers, and an optional
correctness label. Everything downstream — scoring, entropy, evaluation —
works on the immutable types defined here.

Log-probabilities are natural logs. Token texts carry their own whitespace;
detokenization is verbatim concatenation, which keeps the engine agnostic to
whichever tokenizer produced the data.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import IO, Any, Iterable

from .errors import ParseError, ValidationError

# Slightly positive logprobs (float artifacts from producers) are clamped to
# exactly 0.0; anything above this threshold is treated as a real error.
LOGPROB_CLAMP_THRESHOLD = 1e-6

# |sum(u) - 1| allowed for importance profiles and weight vectors.
SUM_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class TokenProb:
    """One generated token and its log-probability under the producer model."""

    text: str
    logprob: float

    def __post_init__(self):
        if not self.text:
            raise ValidationError("token text must be non-empty")
        lp = float(self.logprob)
        if not math.isfinite(lp):
            raise ValidationError(f"token logprob must be finite, got {lp!r}")
        if lp > LOGPROB_CLAMP_THRESHOLD:
            raise ValidationError(
                f"token logprob {lp!r} exceeds the positive clamp threshold "
                f"{LOGPROB_CLAMP_THRESHOLD!r}"
            )
        if lp > 0.0:
            lp = 0.0
        object.__setattr__(self, "logprob", lp)


@dataclass(frozen=True, slots=True)
class Generation:
    """A generated token sequence and its detokenized text.

    ``text`` may be omitted, in which case it is derived by concatenating the
    token texts. When supplied it must equal that concatenation exactly.
    """

    tokens: tuple[TokenProb, ...]
    text: str = ""

    def __post_init__(self):
        tokens = tuple(self.tokens)
        if not tokens:
            raise ValidationError("a generation needs at least one token")
        object.__setattr__(self, "tokens", tokens)
        joined = "".join(t.text for t in tokens)
        if not self.text:
            object.__setattr__(self, "text", joined)
        elif self.text != joined:
            raise ValidationError(
                f"generation text {self.text!r} does not equal the "
                f"concatenation of its token texts {joined!r}"
            )

    @property
    def length(self) -> int:
        return len(self.tokens)

    @property
    def logprobs(self) -> tuple[float, ...]:
        return tuple(t.logprob for t in self.tokens)


@dataclass(frozen=True, slots=True)
class GenerationRecord:
    """One QA instance: question, most likely answer, samples, optional label."""

    id: str
    question: str
    answer: Generation
    samples: tuple[Generation, ...] = ()
    correctness: bool | None = None

    def __post_init__(self):
        if not self.id:
            raise ValidationError("record id must be non-empty")
        object.__setattr__(self, "samples", tuple(self.samples))


@dataclass(frozen=True, slots=True)
class PhraseSegmentation:
    """Partition of a token sequence into contiguous phrases.

    Spans are half-open ``(start, end)`` token index pairs that are sorted,
    non-empty, and cover ``[0, num_tokens)`` without gaps.
    """

    spans: tuple[tuple[int, int], ...]

    def __post_init__(self):
        spans = tuple((int(a), int(b)) for a, b in self.spans)
        if not spans:
            raise ValidationError("a segmentation needs at least one span")
        expected_start = 0
        for start, end in spans:
            if start != expected_start:
                raise ValidationError(
                    f"spans must be contiguous from 0; got start {start} "
                    f"where {expected_start} was expected"
                )
            if end <= start:
                raise ValidationError(f"empty span ({start}, {end})")
            expected_start = end
        object.__setattr__(self, "spans", spans)

    @property
    def num_tokens(self) -> int:
        return self.spans[-1][1]

    @property
    def num_phrases(self) -> int:
        return len(self.spans)

    @classmethod
    def per_token(cls, num_tokens: int) -> "PhraseSegmentation":
        """Degenerate segmentation where every token is its own phrase."""
        if num_tokens < 1:
            raise ValidationError("num_tokens must be >= 1")
        return cls(tuple((i, i + 1) for i in range(num_tokens)))


@dataclass(frozen=True, slots=True)
class ImportanceProfile:
    """Per-token importance coefficients: each in [0, 1], summing to 1."""

    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValidationError("an importance profile needs at least one value")
        for v in values:
            if not (0.0 <= v <= 1.0):
                raise ValidationError(f"importance coefficient {v!r} outside [0, 1]")
        total = 0.0
        for v in values:
            total += v
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValidationError(
                f"importance coefficients sum to {total!r}, expected 1 within "
                f"{SUM_TOLERANCE}"
            )
        object.__setattr__(self, "values", values)

    @property
    def size(self) -> int:
        return len(self.values)


# Slack for per-element weight bound checks; the bounds themselves are exact
# for weights produced by compute_weights, this only guards foreign inputs.
_WEIGHT_BOUND_SLACK = 1e-12


@dataclass(frozen=True, slots=True)
class WeightVector:
    """Per-token scoring exponents: half uniform mass, half importance mass."""

    weights: tuple[float, ...]
    length: int

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if self.length < 1:
            raise ValidationError("weight vector length must be >= 1")
        if len(weights) != self.length:
            raise ValidationError(
                f"weight count {len(weights)} does not match length {self.length}"
            )
        lo = 0.5 / self.length
        hi = lo + 0.5
        for w in weights:
            if w < lo - _WEIGHT_BOUND_SLACK or w > hi + _WEIGHT_BOUND_SLACK:
                raise ValidationError(
                    f"weight {w!r} outside [{lo!r}, {hi!r}] for length {self.length}"
                )
        total = 0.0
        for w in weights:
            total += w
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValidationError(
                f"weights sum to {total!r}, expected 1 within {SUM_TOLERANCE}"
            )
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True, slots=True)
class MeaningCluster:
    """A set of sample indices judged mutually equivalent, with a log score."""

    member_indices: frozenset[int]
    log_score: float

    def __post_init__(self):
        members = frozenset(int(i) for i in self.member_indices)
        if not members:
            raise ValidationError("a meaning cluster must have members")
        if not math.isfinite(self.log_score):
            raise ValidationError("cluster log score must be finite")
        object.__setattr__(self, "member_indices", members)


class Method(str, enum.Enum):
    """Uncertainty-estimation method families."""

    CONFIDENCE = "confidence"
    ENTROPY = "entropy"
    SEMANTIC_ENTROPY = "semantic_entropy"


class Scoring(str, enum.Enum):
    """Sequence scoring functions a method can be driven by."""

    LENGTH_NORMALIZED = "length_normalized"
    MARS = "mars"


@dataclass(frozen=True, slots=True)
class UEResult:
    """One uncertainty score; higher values mean more uncertain."""

    method: Method
    scoring: Scoring
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValidationError(
                f"UE value must be finite, got {self.value!r} "
                f"({self.method.value}/{self.scoring.value})"
            )

    @property
    def key(self) -> str:
        return f"{self.method.value}/{self.scoring.value}"


# ---------------------------------------------------------------------------
# Ingestion / serialization
# ---------------------------------------------------------------------------

def _require(payload: dict, name: str, where: str) -> Any:
    if name not in payload:
        raise ValidationError(f"{where}: missing field {name!r}")
    return payload[name]


def _generation_from_payload(payload: Any, where: str) -> Generation:
    if not isinstance(payload, dict):
        raise ValidationError(f"{where}: generation must be an object")
    text = _require(payload, "text", where)
    raw_tokens = _require(payload, "tokens", where)
    if not isinstance(text, str):
        raise ValidationError(f"{where}: 'text' must be a string")
    if not isinstance(raw_tokens, list) or not raw_tokens:
        raise ValidationError(f"{where}: 'tokens' must be a non-empty list")
    tokens = []
    for i, tok in enumerate(raw_tokens):
        if not isinstance(tok, dict):
            raise ValidationError(f"{where}: token {i} must be an object")
        ttext = _require(tok, "text", f"{where} token {i}")
        lp = _require(tok, "logprob", f"{where} token {i}")
        if not isinstance(ttext, str):
            raise ValidationError(f"{where}: token {i} 'text' must be a string")
        if isinstance(lp, bool) or not isinstance(lp, (int, float)):
            raise ValidationError(f"{where}: token {i} 'logprob' must be a number")
        tokens.append(TokenProb(ttext, float(lp)))
    return Generation(tuple(tokens), text)


def _record_from_payload(payload: Any, line_number: int) -> GenerationRecord:
    where = f"line {line_number}"
    if not isinstance(payload, dict):
        raise ValidationError(f"{where}: record must be an object")
    rid = _require(payload, "id", where)
    if not isinstance(rid, str) or not rid:
        raise ValidationError(f"{where}: 'id' must be a non-empty string")
    where = f"record {rid!r}"
    question = _require(payload, "question", where)
    if not isinstance(question, str):
        raise ValidationError(f"{where}: 'question' must be a string")
    answer = _generation_from_payload(_require(payload, "answer", where), f"{where} answer")
    raw_samples = payload.get("samples", [])
    if not isinstance(raw_samples, list):
        raise ValidationError(f"{where}: 'samples' must be a list")
    samples = tuple(
        _generation_from_payload(s, f"{where} sample {i}")
        for i, s in enumerate(raw_samples)
    )
    correctness = payload.get("correctness")
    if correctness is not None and not isinstance(correctness, bool):
        raise ValidationError(f"{where}: 'correctness' must be a boolean or null")
    return GenerationRecord(rid, question, answer, samples, correctness)


def ingest_records(stream: Iterable[str | bytes]) -> list[GenerationRecord]:
    """Parse line-delimited JSON records from a text or byte stream.

    Blank lines are skipped. Raises :class:`ParseError` (with the line number)
    for undecodable lines and :class:`ValidationError` for well-formed lines
    that violate the schema — including duplicated record ids and token
    logprobs above the clamp threshold.
    """
    records: list[GenerationRecord] = []
    seen: set[str] = set()
    for line_number, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line:
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {line_number}: invalid JSON: {exc}", line_number) from exc
        try:
            record = _record_from_payload(payload, line_number)
        except ValidationError as exc:
            raise ValidationError(f"line {line_number}: {exc}") from exc
        if record.id in seen:
            raise ValidationError(f"line {line_number}: duplicate record id {record.id!r}")
        seen.add(record.id)
        records.append(record)
    return records


def load_records(path: str) -> list[GenerationRecord]:
    with open(path, "r", encoding="utf-8") as handle:
        return ingest_records(handle)


def generation_to_dict(gen: Generation) -> dict:
    return {
        "text": gen.text,
        "tokens": [{"text": t.text, "logprob": t.logprob} for t in gen.tokens],
    }


def record_to_dict(record: GenerationRecord) -> dict:
    return {
        "id": record.id,
        "question": record.question,
        "answer": generation_to_dict(record.answer),
        "samples": [generation_to_dict(s) for s in record.samples],
        "correctness": record.correctness,
    }


def serialize_records(records: Iterable[GenerationRecord]) -> str:
    """Render records as line-delimited JSON; inverse of :func:`ingest_records`."""
    lines = [
        json.dumps(record_to_dict(r), ensure_ascii=False, sort_keys=True)
        for r in records
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def write_records(records: Iterable[GenerationRecord], handle: IO[str]) -> None:
    handle.write(serialize_records(records))
