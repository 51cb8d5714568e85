"""Meaning-equivalence providers used for clustering sampled answers."""

import json

import pytest

from uescore import ProviderError, ValidationError
from uescore.equivalence import (
    FixtureEquivalenceProvider,
    NormalizedMatchProvider,
    RemoteNLIProvider,
    normalize_text,
)


class TestNormalizeText:
    def test_case_punctuation_whitespace(self):
        assert normalize_text("  The  SKY-Fortress! ") == "the skyfortress"
        assert normalize_text("Kestrel Peak.") == normalize_text("kestrel   peak")

    def test_empty(self):
        assert normalize_text("!!!") == ""


class TestNormalizedMatch:
    provider = NormalizedMatchProvider()

    def test_matches_up_to_normalization(self):
        assert self.provider.equivalent("q", "Kestrel Peak.", "kestrel peak")
        assert not self.provider.equivalent("q", "Kestrel Peak", "Stone Peak")

    def test_symmetric(self):
        a, b = "The Iron Bridge", "iron bridge, the"
        assert self.provider.equivalent("q", a, b) == self.provider.equivalent("q", b, a)


class TestFixtureEquivalence:
    def test_pairs_are_symmetric_and_identity_is_free(self):
        provider = FixtureEquivalenceProvider([("alpha", "beta")])
        assert provider.equivalent("q", "alpha", "beta")
        assert provider.equivalent("q", "beta", "alpha")
        assert provider.equivalent("q", "gamma", "gamma")
        assert not provider.equivalent("q", "alpha", "gamma")

    def test_from_file(self, tmp_path):
        path = tmp_path / "eq.json"
        path.write_text(json.dumps([{"text_a": "x", "text_b": "y"}]))
        provider = FixtureEquivalenceProvider.from_file(path)
        assert provider.equivalent("q", "y", "x")

        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"text_a": "x"}))
        with pytest.raises(ValidationError):
            FixtureEquivalenceProvider.from_file(bad)

        bad.write_text(json.dumps([{"text_a": "x"}]))
        with pytest.raises(ValidationError, match="entry 0"):
            FixtureEquivalenceProvider.from_file(bad)


class FakeClient:
    def __init__(self, bodies):
        self.bodies = list(bodies)
        self.calls = []

    def post_json(self, path, payload):
        self.calls.append((path, payload))
        return self.bodies.pop(0)


class TestRemoteNLI:
    def test_requires_entailment_in_both_directions(self):
        client = FakeClient([{"entail": 0.9}, {"entail": 0.9}])
        provider = RemoteNLIProvider(client, threshold=0.5)
        assert provider.equivalent("Which peak?", "Kestrel", "Sky Fortress")
        # question is prepended to both sides, both directions queried
        assert client.calls == [
            ("/v1/nli", {"premise": "Which peak? Kestrel", "hypothesis": "Which peak? Sky Fortress"}),
            ("/v1/nli", {"premise": "Which peak? Sky Fortress", "hypothesis": "Which peak? Kestrel"}),
        ]

    def test_one_weak_direction_fails(self):
        provider = RemoteNLIProvider(FakeClient([{"entail": 0.9}, {"entail": 0.3}]))
        assert not provider.equivalent("q", "a", "b")
        provider = RemoteNLIProvider(FakeClient([{"entail": 0.3}, {"entail": 0.9}]))
        assert not provider.equivalent("q", "a", "b")

    def test_threshold_is_inclusive(self):
        provider = RemoteNLIProvider(FakeClient([{"entail": 0.5}, {"entail": 0.5}]))
        assert provider.equivalent("q", "a", "b")

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            RemoteNLIProvider(FakeClient([]), threshold=1.25)

    def test_score_validation(self):
        provider = RemoteNLIProvider(FakeClient([{"entail": 1.75}]))
        with pytest.raises(ValidationError):
            provider.equivalent("q", "a", "b")
        provider = RemoteNLIProvider(FakeClient([{"entail": None}]))
        with pytest.raises(ProviderError):
            provider.equivalent("q", "a", "b")
