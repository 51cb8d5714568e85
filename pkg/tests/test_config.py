"""Run configuration parsing, overrides, and provider construction."""

import json

import pytest

from uescore import (
    ConfigError,
    DistributionStrategy,
    FixtureProvider,
    HeuristicProvider,
    Method,
    RemoteProvider,
    RunConfig,
    Scoring,
    SegmentationMode,
)
from uescore.config import (
    build_context,
    build_equivalence_provider,
    build_importance_provider,
    parse_provider_spec,
)
from uescore.entropy import SEDenominator
from uescore.equivalence import (
    FixtureEquivalenceProvider,
    NormalizedMatchProvider,
    RemoteNLIProvider,
)

KINDS = ("heuristic", "fixture", "remote")


class TestProviderSpec:
    def test_bare_kind(self):
        assert parse_provider_spec("heuristic", KINDS, "importance") == ("heuristic", None)

    def test_kind_with_argument(self):
        assert parse_provider_spec("fixture:/tmp/f.json", KINDS, "importance") == (
            "fixture",
            "/tmp/f.json",
        )
        assert parse_provider_spec("remote:http://host:9000", KINDS, "importance") == (
            "remote",
            "http://host:9000",
        )

    def test_unknown_kind(self):
        with pytest.raises(ConfigError, match="unknown importance provider"):
            parse_provider_spec("oracle", KINDS, "importance")

    def test_missing_argument(self):
        with pytest.raises(ConfigError, match="fixture:PATH"):
            parse_provider_spec("fixture", KINDS, "importance")
        with pytest.raises(ConfigError, match="remote:URL"):
            parse_provider_spec("remote:", KINDS, "importance")

    def test_unexpected_argument(self):
        with pytest.raises(ConfigError, match="takes no argument"):
            parse_provider_spec("heuristic:x", KINDS, "importance")


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.tau == 0.01
        assert config.strategy is DistributionStrategy.EQUAL
        assert config.segmentation is SegmentationMode.PHRASE
        assert config.methods == (
            Method.CONFIDENCE,
            Method.ENTROPY,
            Method.SEMANTIC_ENTROPY,
        )
        assert config.scorings == (Scoring.LENGTH_NORMALIZED, Scoring.MARS)

    def test_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(tau=0.0)
        with pytest.raises(ConfigError):
            RunConfig(nli_threshold=1.5)
        with pytest.raises(ConfigError):
            RunConfig(parallelism=0)
        with pytest.raises(ConfigError):
            RunConfig(methods=())
        with pytest.raises(ConfigError):
            RunConfig(importance_provider="oracle")

    def test_mars_requires_importance_provider(self):
        with pytest.raises(ConfigError, match="importance provider"):
            RunConfig(importance_provider=None)
        RunConfig(importance_provider=None, scorings=(Scoring.LENGTH_NORMALIZED,))

    def test_round_trip_through_dict(self):
        config = RunConfig(tau=0.25, strategy=DistributionStrategy.MAX_UNCERTAIN)
        assert RunConfig.from_dict(config.to_dict()) == config

    def test_echo_omits_parallelism(self):
        config = RunConfig(parallelism=8)
        assert "parallelism" not in config.to_dict()
        # the echo therefore round-trips to default parallelism
        assert RunConfig.from_dict(config.to_dict()).parallelism == 1

    def test_from_dict_rejects_unknown_keys(self):
        with pytest.raises(ConfigError, match="unknown configuration keys: temperature"):
            RunConfig.from_dict({"temperature": 0.5})

    def test_from_dict_parses_enums_and_lists(self):
        config = RunConfig.from_dict(
            {
                "strategy": "max",
                "segmentation": "token",
                "se_denominator": "samples",
                "methods": ["entropy", "confidence"],
                "scorings": "length_normalized",
                "importance_provider": None,
            }
        )
        assert config.strategy is DistributionStrategy.MAX_UNCERTAIN
        assert config.segmentation is SegmentationMode.TOKEN
        assert config.se_denominator is SEDenominator.SAMPLES
        # canonical order regardless of input order
        assert config.methods == (Method.CONFIDENCE, Method.ENTROPY)
        assert config.scorings == (Scoring.LENGTH_NORMALIZED,)

    def test_from_dict_type_errors(self):
        with pytest.raises(ConfigError, match="tau must be a number"):
            RunConfig.from_dict({"tau": "small"})
        with pytest.raises(ConfigError, match="parallelism must be an integer"):
            RunConfig.from_dict({"parallelism": 2.5})
        with pytest.raises(ConfigError, match="unknown strategy"):
            RunConfig.from_dict({"strategy": "spread"})
        with pytest.raises(ConfigError, match="unknown method"):
            RunConfig.from_dict({"methods": ["guessing"]})

    def test_from_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"tau": 0.5}))
        assert RunConfig.from_file(path).tau == 0.5
        missing = tmp_path / "absent.json"
        with pytest.raises(ConfigError, match="cannot read config file"):
            RunConfig.from_file(missing)
        path.write_text("{broken")
        with pytest.raises(ConfigError, match="not valid JSON"):
            RunConfig.from_file(path)

    def test_override_ignores_none(self):
        config = RunConfig()
        assert config.override(tau=None) is config
        assert config.override(tau=0.5).tau == 0.5

    def test_override_revalidates(self):
        with pytest.raises(ConfigError):
            RunConfig().override(tau=-1.0)


class TestProviderConstruction:
    def test_heuristic_and_match(self):
        assert isinstance(build_importance_provider("heuristic"), HeuristicProvider)
        assert isinstance(build_equivalence_provider("match", 0.5), NormalizedMatchProvider)

    def test_fixture_paths(self, tmp_path):
        imp = tmp_path / "imp.json"
        imp.write_text(json.dumps({"masked": 0.5}))
        provider = build_importance_provider(f"fixture:{imp}")
        assert isinstance(provider, FixtureProvider)

        eq = tmp_path / "eq.json"
        eq.write_text(json.dumps([{"text_a": "x", "text_b": "y"}]))
        provider = build_equivalence_provider(f"fixture:{eq}", 0.5)
        assert isinstance(provider, FixtureEquivalenceProvider)

    def test_fixture_problems_become_config_errors(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read importance fixture"):
            build_importance_provider(f"fixture:{tmp_path/'absent.json'}")
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        with pytest.raises(ConfigError, match="bad importance fixture"):
            build_importance_provider(f"fixture:{bad}")
        bad.write_text(json.dumps({"masked": 7.0}))
        with pytest.raises(ConfigError, match="bad importance fixture"):
            build_importance_provider(f"fixture:{bad}")
        with pytest.raises(ConfigError, match="cannot read equivalence fixture"):
            build_equivalence_provider(f"fixture:{tmp_path/'absent.json'}", 0.5)

    def test_remote_providers(self):
        assert isinstance(
            build_importance_provider("remote:http://localhost:9000"),
            RemoteProvider,
        )
        provider = build_equivalence_provider("remote:http://localhost:9000", 0.75)
        assert isinstance(provider, RemoteNLIProvider)
        assert provider.threshold == 0.75


class TestBuildContext:
    def test_providers_built_lazily(self, tmp_path):
        # length-normalized-only run must not touch the fixture path at all
        config = RunConfig(
            scorings=(Scoring.LENGTH_NORMALIZED,),
            methods=(Method.CONFIDENCE, Method.ENTROPY),
            importance_provider=f"fixture:{tmp_path/'never_read.json'}",
        )
        ctx = build_context(config)
        assert ctx.importance_provider is None
        assert ctx.equivalence_provider is None

    def test_full_context(self):
        ctx = build_context(RunConfig())
        assert isinstance(ctx.importance_provider, HeuristicProvider)
        assert isinstance(ctx.equivalence_provider, NormalizedMatchProvider)
        assert ctx.tau == 0.01
        assert ctx.methods == frozenset(
            {Method.CONFIDENCE, Method.ENTROPY, Method.SEMANTIC_ENTROPY}
        )
