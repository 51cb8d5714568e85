"""Record the frozen wire-contract pairs for the sidecar tests.

Builds 20 answer-equivalence requests from the bundled fixture (masked
variants the engine would really send, plus identity and fully-masked
edge cases), posts them to a live --stub sidecar, cross-checks every
response against a direct recomputation of the stub rules, and freezes
the request/response pairs to sidecar/tests/data/wire_pairs.json.

Rerun only when the stub rules themselves change, then re-run the tests.
"""

import json
import socket
import subprocess
import sys
import time
from pathlib import Path

import httpx

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "sidecar" / "src"))

from uescore import load_records  # noqa: E402
from uescore.importance import build_masked_variants, segment_phrases  # noqa: E402
from uescore_sidecar import stub  # noqa: E402

OUT = ROOT / "sidecar" / "tests" / "data" / "wire_pairs.json"


# references with several salient words, candidates keeping subsets, so the
# frozen scores include non-dyadic fractions that stress float round-tripping
_FRACTIONAL = [
    {
        "question": "Who reached the South Pole first?",
        "reference": "Roald Amundsen reached it in December 1911",
        "candidate": "Amundsen reached it in 1911",  # 2 of 4 salient kept
    },
    {
        "question": "Who reached the South Pole first?",
        "reference": "Roald Amundsen reached it in December 1911",
        "candidate": "Amundsen in December 1911",  # 3 of 4
    },
    {
        "question": "What is the capital of Atheria?",
        "reference": "The capital is Port Meridian on the coast",
        "candidate": "Port somewhere",  # 1 of 3
    },
    {
        "question": "What is the capital of Atheria?",
        "reference": "The capital is Port Meridian on the coast",
        "candidate": "Port Meridian",  # 2 of 3
    },
    {
        "question": "Name the seven moons.",
        "reference": "Aster Briona Caldus Derei Elun Fara Galte",
        "candidate": "Fara",  # 1 of 7
    },
    {
        "question": "Name the seven moons.",
        "reference": "Aster Briona Caldus Derei Elun Fara Galte",
        "candidate": "Aster Briona Caldus Derei Elun",  # 5 of 7
    },
]


def build_requests() -> list[dict]:
    records = load_records(str(ROOT / "tests" / "data" / "fixture_qa.jsonl"))
    requests: list[dict] = []
    for i, record in enumerate(records):
        seg = segment_phrases(record.answer, record.question)
        variants = build_masked_variants(record.answer, seg)
        # first half masks the leading phrase, second half the trailing one
        variant = variants[0] if i < 6 else variants[-1]
        requests.append(
            {
                "question": record.question,
                "reference": record.answer.text,
                "candidate": variant.masked_text,
            }
        )
        if len(requests) == 12:
            break
    requests.extend(_FRACTIONAL)
    first = records[0]
    requests.append(
        {
            "question": first.question,
            "reference": first.answer.text,
            "candidate": first.answer.text,  # unmodified answer
        }
    )
    requests.append(
        {
            "question": first.question,
            "reference": first.answer.text,
            "candidate": "",  # fully masked answer
        }
    )
    return requests


def main() -> int:
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    proc = subprocess.Popen(
        [sys.executable, "-m", "uescore_sidecar", "--stub", "--port", str(port)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    base = f"http://127.0.0.1:{port}"
    try:
        deadline = time.time() + 20
        while True:
            try:
                if httpx.get(f"{base}/healthz", timeout=1.0).status_code == 200:
                    break
            except httpx.HTTPError:
                pass
            if time.time() > deadline:
                raise RuntimeError("stub sidecar did not come up")
            time.sleep(0.1)

        pairs = []
        for request in build_requests():
            response = httpx.post(f"{base}/v1/bem", json=request, timeout=5.0)
            response.raise_for_status()
            body = response.json()
            expected = stub.bem_score(
                request["question"], request["reference"], request["candidate"]
            )
            assert body["score"] == expected, (request, body, expected)
            pairs.append({"request": request, "response": body})
    finally:
        proc.terminate()
        proc.wait(timeout=10)

    assert len(pairs) == 20, len(pairs)
    scores = sorted({p["response"]["score"] for p in pairs})
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps({"pairs": pairs}, indent=2, ensure_ascii=False, sort_keys=True)
        + "\n",
        encoding="utf-8",
    )
    print(f"froze {len(pairs)} pairs to {OUT}")
    print(f"distinct scores: {scores}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
