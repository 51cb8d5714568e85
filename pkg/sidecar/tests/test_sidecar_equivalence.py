"""The --stub sidecar must reproduce the engine's local providers exactly."""

from pathlib import Path

import pytest

pytest.importorskip("uescore_sidecar")

from uescore import (
    DistributionStrategy,
    HeuristicProvider,
    NormalizedMatchProvider,
    RemoteNLIProvider,
    RemoteProvider,
    importance_for_generation,
    load_records,
)
from uescore._http import SidecarClient

ENGINE_DATA = Path(__file__).resolve().parents[2] / "tests" / "data"
TAU = 0.01


def test_stub_importance_matches_local_heuristic(stub_url):
    records = load_records(str(ENGINE_DATA / "fixture_qa.jsonl"))
    local = HeuristicProvider()
    checked = 0
    worst = 0.0
    with SidecarClient(stub_url) as client:
        remote = RemoteProvider(client)
        for record in records:
            for gen in (record.answer, *record.samples):
                args = (record.question, gen)
                via_local = importance_for_generation(
                    *args, local, TAU, DistributionStrategy.EQUAL
                )
                via_stub = importance_for_generation(
                    *args, remote, TAU, DistributionStrategy.EQUAL
                )
                assert len(via_stub.values) == len(via_local.values)
                for a, b in zip(via_stub.values, via_local.values):
                    worst = max(worst, abs(a - b))
                    assert abs(a - b) <= 1e-9
                checked += 1
    assert checked == 120  # 20 answers + 100 samples
    print(f"\n120 importance profiles identical (max |difference| {worst:.2e})")


def test_stub_clustering_matches_normalized_match(stub_url):
    records = load_records(str(ENGINE_DATA / "fixture_qa.jsonl"))
    local = NormalizedMatchProvider()
    with SidecarClient(stub_url) as client:
        remote = RemoteNLIProvider(client, threshold=0.5)
        for record in records:
            texts = [s.text for s in record.samples]
            for i, a in enumerate(texts):
                for b in texts[i + 1 :]:
                    assert remote.equivalent(record.question, a, b) == local.equivalent(
                        record.question, a, b
                    )
