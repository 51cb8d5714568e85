"""HTTP sidecar hosting scoring models for the uescore engine.

Two endpoints: answer-equivalence scoring (how well a candidate answer
matches a reference, given the question) and directional entailment. The
engine talks to both through its remote providers; everything downstream
of the raw scores (thresholds, softmax, importance math) stays in the
engine, keeping this service a thin model host.
"""

from .app import ModelUnavailable, create_app
from .stub import StubBackend

__all__ = ["ModelUnavailable", "StubBackend", "create_app"]
