"""Generate the frozen test datasets under tests/data/.

The QA fixture is engineered so that meaning-weighted confidence cleanly
separates correct from incorrect records while length-normalized confidence
gets scrambled: incorrect answers carry low-probability name tokens wrapped
in very high-probability filler, correct answers the reverse. The script
recomputes both AUROCs and refuses to write a dataset whose gap is below
0.15 (the acceptance floor is 0.05).

Run from the repository root:

    python3 tools/make_fixture.py

Output is deterministic (fixed RNG seed); regenerating rewrites
tests/data/fixture_qa.jsonl and tests/data/fixture_degenerate.jsonl.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

from uescore.config import RunConfig, build_context
from uescore.evaluation import evaluate
from uescore.records import (
    Generation,
    GenerationRecord,
    Method,
    Scoring,
    TokenProb,
    load_records,
    serialize_records,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"

# (answer name tokens, subject kind, alias used in the question)
ENTITIES = [
    (("Kestrel", " Peak"), "mountain", "Sky Fortress"),
    (("Velora", " River"), "river", "Silver Thread"),
    (("Marwick", " City"), "city", "Harbor of Glass"),
    (("Tallis", " Reef"), "reef", "Coral Crown"),
    (("Ondine", " Falls"), "waterfall", "Veil of Mist"),
    (("Bram", " Hollow"), "valley", "Quiet Basin"),
    (("Selene", " Crater"), "crater", "Moon Scar"),
    (("Vantor", " Bridge"), "bridge", "Iron Arc"),
    (("Lyra", " Observatory"), "observatory", "Star House"),
    (("Copper", "vale"), "town", "Penny Hollow"),
    (("Nerith", " Sea"), "sea", "Glass Mirror"),
    (("Fenwick", " Tower"), "tower", "North Needle"),
    (("Galeria", " Cavern"), "cavern", "Echo Hall"),
    (("Morrow", " Plain"), "plain", "Gold Carpet"),
    (("Iskra", " Volcano"), "volcano", "Ember Gate"),
    (("Thorn", "field"), "forest", "Green Maze"),
    (("Pellam", " Canyon"), "canyon", "Red Stair"),
    (("Quill", " Harbor"), "harbor", "Ink Bay"),
    (("Sorrel", " Dunes"), "dunes", "Sand Ocean"),
    (("Vesper", " Lake"), "lake", "Night Glass"),
]

ALT_NAMES = [
    "Doran Spire",
    "Mistral Ridge",
    "Halcyon Point",
    "Ferrin Shelf",
    "Ashvale Bluff",
    "Corvin Knoll",
    "Eldan Rise",
    "Maris Shoal",
]

DEG_VERBS = [
    "hums",
    "glows faintly",
    "drifts west",
    "ticks",
    "settles slowly",
    "creaks",
    "flickers",
    "leans east",
]

DEG_ALTS = ["whirrs", "buzzes", "spins", "rustles", "bends", "cracks"]

DEG_OBJECTS = [
    "copper lantern",
    "tide gauge",
    "paper mill",
    "signal mast",
    "grain hopper",
    "rope ferry",
    "clock spring",
    "willow fence",
]


def filler_tokens(alias: str) -> list[str]:
    return [" is", " known", " as", " the"] + [f" {w}" for w in alias.split()]


def build_generation(
    rng: np.random.Generator,
    name_tokens: tuple[str, ...],
    alias: str,
    name_range: tuple[float, float],
    filler_range: tuple[float, float],
) -> Generation:
    tokens = []
    for text in name_tokens:
        p = float(rng.uniform(*name_range))
        tokens.append(TokenProb(text, math.log(p)))
    for text in filler_tokens(alias):
        p = float(rng.uniform(*filler_range))
        tokens.append(TokenProb(text, math.log(p)))
    return Generation(tokens=tuple(tokens))


def name_to_tokens(name: str) -> tuple[str, ...]:
    words = name.split()
    return tuple([words[0]] + [f" {w}" for w in words[1:]])


def build_qa_records(rng: np.random.Generator) -> list[GenerationRecord]:
    records = []
    for i, (name_tokens, kind, alias) in enumerate(ENTITIES):
        correct = i % 2 == 0
        question = f"Which {kind} is known as the {alias}?"
        if correct:
            # Filler drawn low enough that length-normalized averaging makes
            # many correct answers look unconfident.
            answer = build_generation(
                rng, name_tokens, alias, (0.75, 0.95), (0.5, 0.9)
            )
        else:
            # Confident filler around a low-probability name: length
            # normalization reads this as a confident answer.
            answer = build_generation(
                rng, name_tokens, alias, (0.18, 0.42), (0.9, 0.99)
            )
        samples = []
        if correct:
            # Four agreeing samples plus one stray alternative.
            for _ in range(4):
                samples.append(
                    build_generation(
                        rng, name_tokens, alias, (0.7, 0.95), (0.6, 0.95)
                    )
                )
            alt = name_to_tokens(ALT_NAMES[i % len(ALT_NAMES)])
            samples.append(
                build_generation(rng, alt, alias, (0.2, 0.5), (0.7, 0.95))
            )
        else:
            # Scattered low-probability guesses across several meanings.
            alt_a = name_to_tokens(ALT_NAMES[i % len(ALT_NAMES)])
            alt_b = name_to_tokens(ALT_NAMES[(i + 3) % len(ALT_NAMES)])
            alt_c = name_to_tokens(ALT_NAMES[(i + 5) % len(ALT_NAMES)])
            for tokens in (alt_a, alt_a, alt_b, alt_c, name_tokens):
                samples.append(
                    build_generation(
                        rng, tokens, alias, (0.15, 0.55), (0.6, 0.95)
                    )
                )
        records.append(
            GenerationRecord(
                id=f"qa-{i + 1:03d}",
                question=question,
                answer=answer,
                samples=tuple(samples),
                correctness=correct,
            )
        )
    return records


def build_plain_generation(
    rng: np.random.Generator, phrase: str, prob_range: tuple[float, float]
) -> Generation:
    tokens = []
    for text in name_to_tokens(phrase):
        p = float(rng.uniform(*prob_range))
        tokens.append(TokenProb(text, math.log(p)))
    return Generation(tokens=tuple(tokens))


def build_degenerate_records(rng: np.random.Generator) -> list[GenerationRecord]:
    """Answers whose every token is its own phrase (lowercase, no merges)."""
    records = []
    for i, verb_phrase in enumerate(DEG_VERBS):
        correct = i % 2 == 0
        question = f"What does the {DEG_OBJECTS[i]} do?"
        prob_range = (0.7, 0.95) if correct else (0.2, 0.5)
        answer = build_plain_generation(rng, verb_phrase, prob_range)
        samples = []
        if correct:
            for _ in range(4):
                samples.append(
                    build_plain_generation(rng, verb_phrase, (0.65, 0.95))
                )
            samples.append(
                build_plain_generation(
                    rng, DEG_ALTS[i % len(DEG_ALTS)], (0.2, 0.5)
                )
            )
        else:
            alt_a = DEG_ALTS[i % len(DEG_ALTS)]
            alt_b = DEG_ALTS[(i + 2) % len(DEG_ALTS)]
            for phrase in (alt_a, alt_a, alt_b, verb_phrase, alt_b):
                samples.append(
                    build_plain_generation(rng, phrase, (0.15, 0.55))
                )
        records.append(
            GenerationRecord(
                id=f"deg-{i + 1:03d}",
                question=question,
                answer=answer,
                samples=tuple(samples),
                correctness=correct,
            )
        )
    return records


def check_separation(path: Path, require_gap: bool) -> None:
    records = load_records(str(path))
    ctx = build_context(RunConfig())
    report = evaluate(records, ctx)
    cells = {
        (s.method, s.scoring): s.auroc for s in report.scores
    }
    for (method, scoring), value in sorted(
        cells.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)
    ):
        print(f"  {method.value}/{scoring.value}: {value:.4f}")
    gap = (
        cells[(Method.CONFIDENCE, Scoring.MARS)]
        - cells[(Method.CONFIDENCE, Scoring.LENGTH_NORMALIZED)]
    )
    print(f"  confidence gap (meaning-weighted minus length-normalized): {gap:.4f}")
    if require_gap and gap < 0.15:
        sys.exit(f"confidence AUROC gap {gap:.4f} below the 0.15 build floor")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20250817)
    qa_path = DATA_DIR / "fixture_qa.jsonl"
    qa_path.write_text(
        serialize_records(build_qa_records(rng)), encoding="utf-8"
    )
    deg_path = DATA_DIR / "fixture_degenerate.jsonl"
    deg_path.write_text(
        serialize_records(build_degenerate_records(rng)), encoding="utf-8"
    )
    print(f"wrote {qa_path}")
    check_separation(qa_path, require_gap=True)
    print(f"wrote {deg_path}")
    check_separation(deg_path, require_gap=False)


if __name__ == "__main__":
    main()
