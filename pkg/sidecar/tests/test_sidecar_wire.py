"""Wire contract between the engine's remote clients and the sidecar."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import httpx
import pytest

pytest.importorskip("uescore_sidecar")

from uescore import (
    DistributionStrategy,
    Generation,
    RemoteNLIProvider,
    RemoteProvider,
    TokenProb,
    ValidationError,
    importance_for_generation,
)
from uescore._http import SidecarClient

PAIRS = json.loads(
    (Path(__file__).parent / "data" / "wire_pairs.json").read_text(encoding="utf-8")
)["pairs"]


def test_recorded_pairs_through_engine_client(stub_url):
    assert len(PAIRS) == 20
    with SidecarClient(stub_url) as client:
        provider = RemoteProvider(client)
        for pair in PAIRS:
            req = pair["request"]
            score = provider.score(
                req["question"], req["reference"], req["candidate"]
            )
            assert score == pair["response"]["score"]  # bit-exact, no tolerance


def test_recorded_pairs_raw_bodies(stub_url):
    # same pairs again at the HTTP level: the whole response object must match
    for pair in PAIRS:
        response = httpx.post(f"{stub_url}/v1/bem", json=pair["request"], timeout=5.0)
        assert response.status_code == 200
        assert response.json() == pair["response"]


def test_nli_directional_scores(stub_url):
    with SidecarClient(stub_url) as client:
        same = client.post_json(
            "/v1/nli", {"premise": "Q The Sky Fortress", "hypothesis": "q the sky fortress!"}
        )
        assert same == {"entail": 1.0}
        different = client.post_json(
            "/v1/nli", {"premise": "Q Kestrel Peak", "hypothesis": "Q Velora River"}
        )
        assert different == {"entail": 0.0}


BAD_BEM = [
    {},
    {"reference": "x", "candidate": ""},
    {"question": "q", "candidate": ""},
    {"question": "q", "reference": "x"},
    {"question": 7, "reference": "x", "candidate": ""},
    {"question": "q", "reference": "x", "candidate": None},
    {"question": "", "reference": "x", "candidate": ""},
    {"question": "q", "reference": "", "candidate": ""},
    {"question": "q", "reference": "x", "candidate": "", "extra": 1},
]

BAD_NLI = [
    {},
    {"premise": "p"},
    {"hypothesis": "h"},
    {"premise": "p", "hypothesis": ""},
    {"premise": ["p"], "hypothesis": "h"},
    {"premise": "p", "hypothesis": "h", "direction": "both"},
]


def test_schema_violations_return_400(stub_url):
    for body in BAD_BEM:
        response = httpx.post(f"{stub_url}/v1/bem", json=body, timeout=5.0)
        assert response.status_code == 400, body
        assert "error" in response.json()
    for body in BAD_NLI:
        response = httpx.post(f"{stub_url}/v1/nli", json=body, timeout=5.0)
        assert response.status_code == 400, body
    # non-object and unparseable bodies
    for raw in (b"[1, 2]", b'"text"', b"{not json"):
        response = httpx.post(
            f"{stub_url}/v1/bem",
            content=raw,
            headers={"Content-Type": "application/json"},
            timeout=5.0,
        )
        assert response.status_code == 400, raw


def test_empty_candidate_is_valid(stub_url):
    body = {
        "question": "Which mountain is known as the Sky Fortress?",
        "reference": "Kestrel Peak is known as the Sky Fortress",
        "candidate": "",
    }
    response = httpx.post(f"{stub_url}/v1/bem", json=body, timeout=5.0)
    assert response.status_code == 200
    assert response.json() == {"score": 0.0}


class _RogueHandler(BaseHTTPRequestHandler):
    """Returns well-formed JSON with out-of-range scores."""

    bodies = {"/v1/bem": {"score": 1.5}, "/v1/nli": {"entail": -0.2}}

    def do_POST(self):
        self.rfile.read(int(self.headers.get("Content-Length", 0)))
        payload = json.dumps(self.bodies[self.path]).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture()
def rogue_url():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _RogueHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}"
    finally:
        server.shutdown()
        thread.join()


def test_out_of_range_scores_rejected_engine_side(rogue_url):
    gen = Generation((TokenProb("Kestrel", -0.1), TokenProb(" Peak", -0.2)))
    with SidecarClient(rogue_url) as client:
        with pytest.raises(ValidationError, match=r"\[0, 1\]"):
            importance_for_generation(
                "Which peak?", gen, RemoteProvider(client),
                0.01, DistributionStrategy.EQUAL,
            )
        with pytest.raises(ValidationError, match=r"\[0, 1\]"):
            RemoteNLIProvider(client).equivalent("q", "a", "b")


def test_bearer_token_enforced(auth_stub):
    url, token = auth_stub
    body = {"question": "q", "reference": "only answer", "candidate": ""}

    assert httpx.post(f"{url}/v1/bem", json=body, timeout=5.0).status_code == 401
    wrong = {"Authorization": "Bearer nope"}
    assert (
        httpx.post(f"{url}/v1/bem", json=body, headers=wrong, timeout=5.0).status_code
        == 401
    )
    # health probes stay open
    assert httpx.get(f"{url}/healthz", timeout=5.0).status_code == 200

    with SidecarClient(url, token=token) as client:
        assert RemoteProvider(client).score("q", "only answer", "") == 0.0


def test_model_not_loaded_returns_503(modelless_url):
    assert httpx.get(f"{modelless_url}/healthz", timeout=5.0).status_code == 200
    bem = httpx.post(
        f"{modelless_url}/v1/bem",
        json={"question": "q", "reference": "x", "candidate": ""},
        timeout=5.0,
    )
    assert bem.status_code == 503
    assert "not loaded" in bem.json()["error"]
    nli = httpx.post(
        f"{modelless_url}/v1/nli",
        json={"premise": "p", "hypothesis": "h"},
        timeout=5.0,
    )
    assert nli.status_code == 503
