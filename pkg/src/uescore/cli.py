"""Command-line interface.

Subcommands: score (per-record uncertainty values), evaluate (AUROC report),
ablate (segmentation x distribution-strategy sweep), validate (schema check).
Every run is reproducible from the input file plus the effective
configuration; outputs are written atomically and sorted, so reruns and
different --jobs settings produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

from .config import (
    RunConfig,
    _parse_methods,
    _parse_scorings,
    build_context,
)
from .errors import ConfigError, EngineError
from .evaluation import (
    AblationEntry,
    UEReport,
    ablation_to_dict,
    evaluate,
    format_ablation_table,
    format_report_table,
    report_to_dict,
    score_records,
)
from .importance import DistributionStrategy, SegmentationMode
from .records import load_records


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and rename; no partial outputs."""
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(
        dir=target.parent or ".", prefix=target.name + ".", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _report_paths(out: str) -> tuple[str, str]:
    base = out[: -len(".json")] if out.endswith(".json") else out
    return base + ".json", base + ".txt"


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file (if any) plus flag overrides; flags win."""
    config = (
        RunConfig.from_file(args.config) if args.config else RunConfig()
    )
    return config.override(
        tau=args.tau,
        strategy=(
            DistributionStrategy(args.strategy) if args.strategy else None
        ),
        importance_provider=args.importance,
        equivalence_provider=args.equivalence,
        methods=_parse_methods(args.methods) if args.methods else None,
        scorings=_parse_scorings(args.scorings) if args.scorings else None,
        parallelism=args.jobs,
    )


def cmd_score(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    records = load_records(args.input)
    ctx = build_context(config)
    outcomes = score_records(records, ctx, jobs=config.parallelism)
    rows: list[dict] = []
    skips: list[tuple[str, str, str]] = []
    for record, (results, cell_skips) in zip(records, outcomes):
        for result in results:
            rows.append(
                {
                    "id": record.id,
                    "method": result.method.value,
                    "scoring": result.scoring.value,
                    "value": result.value,
                }
            )
        for method_key, reason in cell_skips:
            skips.append((record.id, method_key, reason))
    rows.sort(key=lambda row: (row["id"], row["method"], row["scoring"]))
    text = "".join(
        json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n"
        for row in rows
    )
    write_text_atomic(args.out, text)
    for record_id, method_key, reason in sorted(skips):
        print(f"skipped {record_id} [{method_key}]: {reason}", file=sys.stderr)
    print(f"wrote {len(rows)} scores to {args.out}")
    return 0


def _emit_report(
    out: str, payload: dict, table: str, what: str
) -> None:
    json_path, txt_path = _report_paths(out)
    write_text_atomic(json_path, _dump_json(payload))
    write_text_atomic(txt_path, table)
    sys.stdout.write(table)
    print(f"wrote {what} to {json_path} and {txt_path}")


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    records = load_records(args.input)
    ctx = build_context(config)
    report = evaluate(
        records, ctx, config_echo=config.to_dict(), jobs=config.parallelism
    )
    _emit_report(
        args.out, report_to_dict(report), format_report_table(report), "report"
    )
    return 0


def cmd_ablate(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    records = load_records(args.input)
    ctx = build_context(config)
    entries: list[AblationEntry] = []
    for segmentation in (SegmentationMode.PHRASE, SegmentationMode.TOKEN):
        for strategy in (
            DistributionStrategy.EQUAL,
            DistributionStrategy.MAX_UNCERTAIN,
            DistributionStrategy.MIN_UNCERTAIN,
        ):
            sweep_ctx = replace(
                ctx, segmentation=segmentation, strategy=strategy
            )
            report: UEReport = evaluate(
                records, sweep_ctx, jobs=config.parallelism
            )
            entries.append(AblationEntry(segmentation, strategy, report))
    _emit_report(
        args.out,
        ablation_to_dict(entries, config.to_dict()),
        format_ablation_table(entries),
        "ablation grid",
    )
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    records = load_records(args.input)
    print(f"ok: {len(records)} records")
    return 0


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="line-delimited record file")
    parser.add_argument("--config", metavar="PATH", help="JSON run configuration")
    parser.add_argument(
        "--tau", type=float, metavar="FLOAT",
        help="softmax temperature for importance normalization",
    )
    parser.add_argument(
        "--strategy",
        choices=[s.value for s in DistributionStrategy],
        help="phrase-to-token importance distribution",
    )
    parser.add_argument(
        "--importance", metavar="SPEC",
        help="importance provider: heuristic, fixture:PATH, or remote:URL",
    )
    parser.add_argument(
        "--equivalence", metavar="SPEC",
        help="equivalence provider: match, fixture:PATH, or remote:URL",
    )
    parser.add_argument(
        "--methods", metavar="LIST",
        help="comma-separated subset of: confidence,entropy,semantic_entropy",
    )
    parser.add_argument(
        "--scorings", metavar="LIST",
        help="comma-separated subset of: length_normalized,mars",
    )
    parser.add_argument(
        "--jobs", type=int, metavar="N",
        help="worker threads for record scoring (never changes output bytes)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uescore",
        description=(
            "Uncertainty scoring and AUROC evaluation for generative "
            "model outputs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="write per-record uncertainty scores")
    _add_run_arguments(score)
    score.add_argument(
        "--out", required=True, metavar="PATH",
        help="output file (line-delimited, one object per score)",
    )
    score.set_defaults(func=cmd_score)

    evaluate_parser = sub.add_parser(
        "evaluate", help="AUROC report against correctness labels"
    )
    _add_run_arguments(evaluate_parser)
    evaluate_parser.add_argument(
        "--out", required=True, metavar="PATH",
        help="report base path; writes PATH.json and PATH.txt",
    )
    evaluate_parser.set_defaults(func=cmd_evaluate)

    ablate = sub.add_parser(
        "ablate",
        help="sweep segmentation x distribution strategy and report the grid",
    )
    _add_run_arguments(ablate)
    ablate.add_argument(
        "--out", required=True, metavar="PATH",
        help="grid base path; writes PATH.json and PATH.txt",
    )
    ablate.set_defaults(func=cmd_ablate)

    validate = sub.add_parser("validate", help="schema-check a record file")
    validate.add_argument("input", help="line-delimited record file")
    validate.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
