"""Launches stub sidecar servers on free ports for the wire tests."""

import os
import socket
import subprocess
import sys
import time
from contextlib import contextmanager

import httpx
import pytest


def free_port() -> int:
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        return probe.getsockname()[1]


@contextmanager
def launch_sidecar(args: list[str], extra_env: dict[str, str] | None = None):
    port = free_port()
    env = dict(os.environ)
    env.pop("UESCORE_SIDECAR_TOKEN", None)
    env.update(extra_env or {})
    proc = subprocess.Popen(
        [sys.executable, "-m", "uescore_sidecar", *args, "--port", str(port)],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        env=env,
        text=True,
    )
    base = f"http://127.0.0.1:{port}"
    try:
        deadline = time.time() + 30
        while True:
            if proc.poll() is not None:
                raise RuntimeError(
                    f"stub exited early with {proc.returncode}: {proc.stdout.read()}"
                )
            try:
                if httpx.get(f"{base}/healthz", timeout=1.0).status_code == 200:
                    break
            except httpx.HTTPError:
                pass
            if time.time() > deadline:
                proc.terminate()
                raise RuntimeError("sidecar did not come up in 30s")
            time.sleep(0.1)
        yield base
    finally:
        proc.terminate()
        proc.wait(timeout=10)


@pytest.fixture(scope="session")
def stub_url():
    with launch_sidecar(["--stub"]) as url:
        yield url


@pytest.fixture(scope="session")
def auth_stub():
    """(url, token) of a stub requiring bearer auth."""
    token = "sesame"
    with launch_sidecar(["--stub"], {"UESCORE_SIDECAR_TOKEN": token}) as url:
        yield url, token


@pytest.fixture(scope="session")
def modelless_url():
    """A hosted-mode server with no models configured."""
    with launch_sidecar([]) as url:
        yield url
