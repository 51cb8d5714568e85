"""Dataset evaluation: AUROC per method against correctness labels.

The positive class is *incorrect* answers: a good uncertainty score ranks
incorrect answers above correct ones, so AUROC is the probability that a
random incorrect answer gets a higher score than a random correct one, ties
counted half.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import kernels
from .entropy import (
    CANONICAL_METHODS,
    CANONICAL_SCORINGS,
    ScoringContext,
    ue_for_record,
)
from .errors import DegenerateLabelsError
from .importance import DistributionStrategy, SegmentationMode
from .records import GenerationRecord, Method, Scoring, UEResult

RECORD_WIDE = "all"


def auroc(ue_values: list[float], incorrect_labels: list[bool]) -> float:
    """Midrank rank-sum AUROC; O(n log n) via one sort."""
    if len(ue_values) != len(incorrect_labels):
        raise ValueError(
            f"{len(ue_values)} values vs {len(incorrect_labels)} labels"
        )
    n_pos = sum(1 for flag in incorrect_labels if flag)
    if n_pos == 0 or n_pos == len(incorrect_labels):
        raise DegenerateLabelsError(
            "AUROC needs at least one correct and one incorrect record"
        )
    flags = [1 if flag else 0 for flag in incorrect_labels]
    return kernels.auroc_midrank(ue_values, flags)


@dataclass(frozen=True, slots=True)
class ScoredRow:
    record_id: str
    method: Method
    scoring: Scoring
    value: float
    incorrect: bool


@dataclass(frozen=True, slots=True)
class MethodScore:
    method: Method
    scoring: Scoring
    auroc: float
    num_records: int


@dataclass(frozen=True, slots=True)
class MethodError:
    method: Method
    scoring: Scoring
    reason: str


@dataclass(frozen=True, slots=True)
class SkippedRecord:
    """A record excluded from scoring, entirely or for one method."""

    record_id: str
    method_key: str  # a Method value, or RECORD_WIDE for whole-record skips
    reason: str


@dataclass(frozen=True, slots=True)
class UEReport:
    num_records: int
    scores: tuple[MethodScore, ...]
    errors: tuple[MethodError, ...]
    skipped: tuple[SkippedRecord, ...]
    config: dict


def score_record_cells(
    record: GenerationRecord, ctx: ScoringContext
) -> tuple[list[UEResult], list[tuple[str, str]]]:
    """Score one record, degrading per-method instead of failing whole.

    Sampling-based methods are skipped (with a reason) when the record has
    no samples; whatever else was requested still runs.
    """
    methods = [m for m in CANONICAL_METHODS if m in ctx.methods]
    skips: list[tuple[str, str]] = []
    if not record.samples:
        sampling = [m for m in methods if m is not Method.CONFIDENCE]
        skips = [(m.value, "insufficient samples") for m in sampling]
        methods = [m for m in methods if m is Method.CONFIDENCE]
    if not methods:
        return [], skips
    results = ue_for_record(record, ctx.restricted_to(frozenset(methods)))
    return results, skips


def score_records(
    records: list[GenerationRecord],
    ctx: ScoringContext,
    *,
    jobs: int = 1,
) -> list[tuple[list[UEResult], list[tuple[str, str]]]]:
    """score_record_cells over many records, in input order.

    The worker pool preserves order, so results never depend on jobs.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1 or len(records) <= 1:
        return [score_record_cells(record, ctx) for record in records]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda r: score_record_cells(r, ctx), records))


def evaluate(
    records: list[GenerationRecord],
    ctx: ScoringContext,
    *,
    config_echo: dict | None = None,
    jobs: int = 1,
) -> UEReport:
    """AUROC per requested method over a labeled dataset.

    Unlabeled records are skipped whole; records unusable for one method
    are skipped for that method only. A method with zero usable records or
    single-class labels yields an error entry, never a global failure.
    Output is deterministic: rows are sorted before aggregation and the
    worker pool preserves record order, so the report does not depend on
    ``jobs``.
    """
    skipped: list[SkippedRecord] = []
    labeled: list[GenerationRecord] = []
    for record in records:
        if record.correctness is None:
            skipped.append(SkippedRecord(record.id, RECORD_WIDE, "unlabeled"))
        else:
            labeled.append(record)
    outcomes = score_records(labeled, ctx, jobs=jobs)

    rows: list[ScoredRow] = []
    for record, (results, cell_skips) in zip(labeled, outcomes):
        for method_key, reason in cell_skips:
            skipped.append(SkippedRecord(record.id, method_key, reason))
        for result in results:
            rows.append(
                ScoredRow(
                    record_id=record.id,
                    method=result.method,
                    scoring=result.scoring,
                    value=result.value,
                    incorrect=not record.correctness,
                )
            )
    rows.sort(key=lambda r: (r.record_id, r.method.value, r.scoring.value))
    skipped.sort(key=lambda s: (s.record_id, s.method_key))

    scores: list[MethodScore] = []
    errors: list[MethodError] = []
    for method in CANONICAL_METHODS:
        if method not in ctx.methods:
            continue
        for scoring in CANONICAL_SCORINGS:
            if scoring not in ctx.scorings:
                continue
            cell = [
                row
                for row in rows
                if row.method is method and row.scoring is scoring
            ]
            if not cell:
                errors.append(
                    MethodError(method, scoring, "no usable records")
                )
                continue
            try:
                value = auroc(
                    [row.value for row in cell],
                    [row.incorrect for row in cell],
                )
            except DegenerateLabelsError as exc:
                errors.append(MethodError(method, scoring, str(exc)))
                continue
            scores.append(MethodScore(method, scoring, value, len(cell)))
    return UEReport(
        num_records=len(records),
        scores=tuple(scores),
        errors=tuple(errors),
        skipped=tuple(skipped),
        config=dict(config_echo or {}),
    )


def report_to_dict(report: UEReport) -> dict:
    return {
        "num_records": report.num_records,
        "auroc": [
            {
                "method": s.method.value,
                "scoring": s.scoring.value,
                "auroc": s.auroc,
                "num_records": s.num_records,
            }
            for s in report.scores
        ],
        "errors": [
            {
                "method": e.method.value,
                "scoring": e.scoring.value,
                "reason": e.reason,
            }
            for e in report.errors
        ],
        "skipped": [
            {
                "record_id": s.record_id,
                "method": s.method_key,
                "reason": s.reason,
            }
            for s in report.skipped
        ],
        "config": report.config,
    }


def _cell_map(report: UEReport) -> dict[tuple[Method, Scoring], str]:
    cells: dict[tuple[Method, Scoring], str] = {}
    for s in report.scores:
        # AUROC shown in points (x100) in human-readable output only.
        cells[(s.method, s.scoring)] = f"{100.0 * s.auroc:.2f}"
    for e in report.errors:
        cells[(e.method, e.scoring)] = "n/a"
    return cells


def format_report_table(report: UEReport) -> str:
    """Aligned text table: methods down, scoring functions across."""
    cells = _cell_map(report)
    methods = [m for m in CANONICAL_METHODS if any(k[0] is m for k in cells)]
    scorings = [s for s in CANONICAL_SCORINGS if any(k[1] is s for k in cells)]
    header = ["method"] + [s.value for s in scorings]
    table_rows = [header]
    for method in methods:
        row = [method.value]
        for scoring in scorings:
            row.append(cells.get((method, scoring), "n/a"))
        table_rows.append(row)
    widths = [
        max(len(row[col]) for row in table_rows)
        for col in range(len(header))
    ]
    lines = []
    for row in table_rows:
        padded = [row[0].ljust(widths[0])] + [
            row[col].rjust(widths[col]) for col in range(1, len(header))
        ]
        lines.append("  ".join(padded).rstrip())
    lines.append("")
    lines.append(f"records: {report.num_records}  (AUROC in points, x100)")
    if report.errors:
        lines.append("unscored:")
        for e in report.errors:
            lines.append(f"  {e.method.value}/{e.scoring.value}: {e.reason}")
    if report.skipped:
        lines.append("skipped records:")
        for s in report.skipped:
            lines.append(f"  {s.record_id} [{s.method_key}]: {s.reason}")
    if report.config:
        lines.append("config:")
        for key in sorted(report.config):
            lines.append(f"  {key} = {report.config[key]}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, slots=True)
class AblationEntry:
    """One evaluated configuration in a segmentation x strategy sweep."""

    segmentation: SegmentationMode
    strategy: DistributionStrategy
    report: UEReport


def ablation_to_dict(
    entries: list[AblationEntry], config_echo: dict | None = None
) -> dict:
    return {
        "config": dict(config_echo or {}),
        "grid": [
            {
                "segmentation": entry.segmentation.value,
                "strategy": entry.strategy.value,
                "report": report_to_dict(entry.report),
            }
            for entry in entries
        ],
    }


def format_ablation_table(entries: list[AblationEntry]) -> str:
    """One row per configuration, one column per method/scoring cell."""
    keys = [
        (method, scoring)
        for method in CANONICAL_METHODS
        for scoring in CANONICAL_SCORINGS
        if any(
            (method, scoring) in _cell_map(entry.report) for entry in entries
        )
    ]
    header = ["segmentation", "strategy"] + [
        f"{method.value}/{scoring.value}" for method, scoring in keys
    ]
    table_rows = [header]
    for entry in entries:
        cells = _cell_map(entry.report)
        row = [entry.segmentation.value, entry.strategy.value]
        for key in keys:
            row.append(cells.get(key, "n/a"))
        table_rows.append(row)
    widths = [
        max(len(row[col]) for row in table_rows) for col in range(len(header))
    ]
    lines = []
    for row in table_rows:
        padded = [row[0].ljust(widths[0]), row[1].ljust(widths[1])] + [
            row[col].rjust(widths[col]) for col in range(2, len(header))
        ]
        lines.append("  ".join(padded).rstrip())
    lines.append("")
    lines.append("(AUROC in points, x100)")
    return "\n".join(lines) + "\n"
