"""Record server-side fixtures the frontend tests are pinned against.

Run from the repository root after changing the engine, the bundled
catalog or the query grammar:

    python frontend/tools/record_fixtures.py

Writes frontend/tests/fixtures/{query-contract,storage-response,
detail-response}.json. The Python suite cross-checks the same files in
tests/test_contract.py, so both sides of the wire agree on one recorded
artifact.
"""

from __future__ import annotations

import json
from pathlib import Path
from urllib.parse import parse_qsl

from fastapi.testclient import TestClient

from cloudselect.api import canonical_query, create_app, parse_query, request_fingerprint
from cloudselect.fixtures import load_bundled_catalog, load_bundled_rates

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

LITERAL_STORAGE_QUERY = (
    "media_type=xml&currency=AUD&storage=50&duration=31"
    "&data_upload_size=50&data_download_size=10&copy=1000&get=5000"
)


def main() -> None:
    catalog = load_bundled_catalog()
    rates = load_bundled_rates()
    FIXTURES.mkdir(parents=True, exist_ok=True)

    # Contract: how the server understands the reference storage call.
    parsed = parse_query(dict(parse_qsl(LITERAL_STORAGE_QUERY)), "storage", rates)
    normalized = dict(parse_qsl(canonical_query(parsed, "storage")))
    normalized["media_type"] = "json"  # the UI always asks for json
    contract = {
        "endpoint": "/api/cost/storage",
        "literal_query": LITERAL_STORAGE_QUERY,
        "normalized_params": normalized,
        "fingerprint": request_fingerprint(parsed.request),
    }
    _write("query-contract.json", contract)

    # A real response body for the same call, with volatile fields pinned.
    client = TestClient(create_app(catalog, rates))
    response = client.get(
        f"/api/cost/storage?{LITERAL_STORAGE_QUERY.replace('media_type=xml', 'media_type=json')}"
    )
    body = response.json()
    result_id = body["meta"]["result_id"]
    detail = client.get(f"/api/recommendation/{result_id}").json()
    body["meta"]["result_id"] = "fixture-result"
    body["meta"]["duration_ms"] = 0.5
    detail["meta"]["result_id"] = "fixture-result"
    _write("storage-response.json", body)
    _write("detail-response.json", detail)
    print(f"recorded {len(body['rows'])} rows into {FIXTURES}")


def _write(name: str, payload: dict) -> None:
    (FIXTURES / name).write_text(json.dumps(payload, indent=2) + "\n")


if __name__ == "__main__":
    main()
