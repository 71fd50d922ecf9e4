"""Pin the server's query grammar to the recorded frontend contract.

The frontend builds query strings and tests them against the same
fixture files; this side guarantees the server still parses the
recorded literal call and the normalized parameter set into one and the
same request.
"""

from __future__ import annotations

import json
from pathlib import Path
from urllib.parse import parse_qsl

import pytest

from cloudselect.api import parse_query, request_fingerprint

FIXTURES = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


@pytest.fixture(scope="module")
def contract():
    return json.loads((FIXTURES / "query-contract.json").read_text())


def test_literal_and_normalized_parse_identically(contract, rates):
    literal = parse_query(dict(parse_qsl(contract["literal_query"])), "storage", rates)
    normalized = parse_query(contract["normalized_params"], "storage", rates)
    assert literal.request == normalized.request


def test_fingerprint_matches_recording(contract, rates):
    parsed = parse_query(dict(parse_qsl(contract["literal_query"])), "storage", rates)
    assert request_fingerprint(parsed.request) == contract["fingerprint"]


def test_recorded_response_matches_live_server(contract, catalog, rates):
    from fastapi.testclient import TestClient

    from cloudselect.api import create_app

    recorded = json.loads((FIXTURES / "storage-response.json").read_text())
    client = TestClient(create_app(catalog, rates))
    body = client.get("/api/cost/storage", params=contract["normalized_params"]).json()
    body["meta"]["result_id"] = recorded["meta"]["result_id"]
    body["meta"]["duration_ms"] = recorded["meta"]["duration_ms"]
    assert body == recorded
