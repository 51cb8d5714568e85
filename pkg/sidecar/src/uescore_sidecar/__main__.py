"""Launcher: pick a backend, serve the app.

    python3 -m uescore_sidecar --stub --port 8731
    python3 -m uescore_sidecar --bem-model NAME --nli-model NAME
"""

from __future__ import annotations

import argparse
import sys

import uvicorn

from .app import create_app
from .stub import StubBackend


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="uescore-sidecar",
        description="HTTP sidecar hosting scoring models for the uescore engine.",
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8731)
    parser.add_argument(
        "--stub",
        action="store_true",
        help="serve deterministic heuristic scores; no model downloads",
    )
    parser.add_argument(
        "--bem-model", metavar="NAME", help="answer-equivalence checkpoint"
    )
    parser.add_argument("--nli-model", metavar="NAME", help="entailment checkpoint")
    opts = parser.parse_args(argv)

    if opts.stub and (opts.bem_model or opts.nli_model):
        parser.error("--stub cannot be combined with model flags")

    if opts.stub:
        backend = StubBackend()
    else:
        from .hosted import HostedBackend

        backend = HostedBackend(opts.bem_model, opts.nli_model)
        if not (opts.bem_model or opts.nli_model):
            print(
                "no models configured; scoring endpoints will return 503",
                file=sys.stderr,
            )
        try:
            backend.load()
        except Exception as exc:  # noqa: BLE001 - any load failure is fatal here
            print(f"model load failed: {exc}", file=sys.stderr)
            return 1

    app = create_app(backend)
    print(f"serving {backend.name} backend on http://{opts.host}:{opts.port}")
    uvicorn.run(app, host=opts.host, port=opts.port, log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
