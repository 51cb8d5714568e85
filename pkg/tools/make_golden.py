"""Freeze golden outputs for the regression suite.

Runs the installed CLI on the bundled fixture at default settings and copies
the outputs into tests/data/. Rerun only when an intentional behavior change
invalidates the frozen files; review the diff before committing.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "tests" / "data" / "fixture_qa.jsonl"
DATA = ROOT / "tests" / "data"


def run_cli(*args: str) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "uescore.cli", *args],
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        raise SystemExit(f"cli failed: {args}")


def freeze_importance() -> None:
    # Per-record importance profiles at default config, for chunker and
    # pipeline regression. qa-001 was verified by hand before freezing.
    from uescore.config import RunConfig, build_context
    from uescore.importance import (
        build_masked_variants,
        distribute_to_tokens,
        normalize_importance,
        score_variants,
        segment_phrases,
    )
    from uescore.records import load_records

    ctx = build_context(RunConfig())
    out = {}
    for record in load_records(FIXTURE):
        gen = record.answer
        seg = segment_phrases(gen, record.question)
        variants = build_masked_variants(gen, seg)
        outputs = score_variants(record.question, gen, variants, ctx.importance_provider)
        coeff = normalize_importance([1.0 - o for o in outputs], ctx.tau)
        profile = distribute_to_tokens(coeff, seg, gen, ctx.strategy)
        out[record.id] = {
            "spans": [list(span) for span in seg.spans],
            "provider_outputs": list(outputs),
            "coefficients": list(coeff),
            "token_importance": list(profile.values),
        }
    path = DATA / "golden_importance.json"
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        tmpdir = Path(tmp)
        run_cli("score", str(FIXTURE), "--out", str(tmpdir / "scores.jsonl"))
        run_cli("evaluate", str(FIXTURE), "--out", str(tmpdir / "report.json"))
        run_cli("ablate", str(FIXTURE), "--out", str(tmpdir / "ablation.json"))
        for src, dst in [
            ("scores.jsonl", "golden_scores.jsonl"),
            ("report.json", "golden_report.json"),
            ("report.txt", "golden_report.txt"),
            ("ablation.json", "golden_ablation.json"),
            ("ablation.txt", "golden_ablation.txt"),
        ]:
            shutil.copyfile(tmpdir / src, DATA / dst)
            print(f"wrote {DATA / dst}")
    freeze_importance()


if __name__ == "__main__":
    main()
