from __future__ import annotations

import json
from decimal import Decimal
from xml.etree import ElementTree

import pytest
from fastapi.testclient import TestClient

from cloudselect.api import (
    QueryError,
    canonical_query,
    create_app,
    parse_query,
    parse_range_list,
)
from cloudselect.selection import ResultStore

D = Decimal

STORAGE_QUERY = (
    "media_type=xml&currency=AUD&storage=50&duration=31"
    "&data_upload_size=50&data_download_size=10&copy=1000&get=5000"
)
COMBINED_QUERY = (
    "media_type=xml&currency=AUD&storage=10&duration=30"
    "&data_upload_size=1&data_download_size=1"
    "&ram_range=0%2C69&storage_range=0%2C2040&hour=720&n=1"
)


@pytest.fixture()
def client(catalog, rates):
    return TestClient(create_app(catalog, rates))


def parse_response_xml(text: str) -> dict:
    """Inverse of the service's XML rendering, scoped to response payloads."""

    def scalar(node):
        if node.text is None:
            return None
        try:
            return json.loads(node.text)
        except (json.JSONDecodeError, ValueError):
            return node.text

    root = ElementTree.fromstring(text)
    payload: dict = {}
    meta = root.find("meta")
    payload["meta"] = {child.tag: scalar(child) for child in meta}
    rows = []
    for row in root.find("rows"):
        parsed = {}
        for field in row:
            if len(field):
                parsed[field.tag] = [scalar(item) for item in field]
            else:
                parsed[field.tag] = scalar(field)
        rows.append(parsed)
    payload["rows"] = rows
    return payload


class TestParseRangeList:
    def test_single_pair(self):
        assert parse_range_list("0,69") == [(D(0), D(69))]

    def test_multiple_pairs(self):
        assert parse_range_list("0,69;1,2") == [(D(0), D(69)), (D(1), D(2))]

    def test_decimals_allowed(self):
        assert parse_range_list("0.5,1.75") == [(D("0.5"), D("1.75"))]

    def test_empty_input(self):
        with pytest.raises(QueryError):
            parse_range_list("")

    def test_empty_segment(self):
        with pytest.raises(QueryError):
            parse_range_list("0,69;")

    def test_non_numeric(self):
        with pytest.raises(QueryError):
            parse_range_list("a,b")

    def test_inverted_bounds(self):
        with pytest.raises(QueryError, match="low > high"):
            parse_range_list("69,0")

    def test_missing_half(self):
        with pytest.raises(QueryError):
            parse_range_list("1")


class TestParseQuery:
    def _params(self, query: str) -> dict:
        from urllib.parse import parse_qsl

        return dict(parse_qsl(query))

    def test_literal_storage_query(self, rates):
        query = parse_query(self._params(STORAGE_QUERY), "storage", rates)
        assert query.media_type == "xml"
        assert query.request.currency == "AUD"
        assert query.request.usage.storage_gb == D(50)
        assert query.request.usage.request_counts == {"COPY": 1000, "GET": 5000}
        assert not query.request.include_compute

    def test_literal_combined_query(self, rates):
        query = parse_query(self._params(COMBINED_QUERY), "combined", rates)
        (req,) = query.request.compute_requirements
        assert req.ram_range == (D(0), D(69))
        assert req.local_storage_range == (D(0), D(2040))
        assert req.effective_hours == D(720)
        assert req.instance_count == 1

    def test_bad_media_type(self, rates):
        with pytest.raises(QueryError, match="media_type"):
            parse_query({"media_type": "yaml", "storage": "1",
                         "data_upload_size": "0", "data_download_size": "0"},
                        "storage", rates)

    def test_unknown_params_ignored(self, rates):
        params = self._params(STORAGE_QUERY)
        params["shiny"] = "yes"
        parse_query(params, "storage", rates)  # no error

    def test_defaults(self, rates):
        query = parse_query(
            {"storage": "10", "data_upload_size": "2", "data_download_size": "3"},
            "combined", rates,
        )
        assert query.request.usage.duration_days == D(31)
        (req,) = query.request.compute_requirements
        assert req.effective_hours == D(744)
        assert query.request.currency == "USD"
        assert query.media_type == "json"

    @pytest.mark.parametrize("query,kind", [
        (STORAGE_QUERY, "storage"),
        (COMBINED_QUERY, "combined"),
        ("currency=EUR&data_upload_size=5&data_download_size=0.5&ram_range=1,4;0,69"
         "&storage_range=0,100;0,2040&hour=10,744&n=2,1&providers=Amazon,GoGrid&limit=5",
         "compute"),
    ])
    def test_parse_serialize_parse_idempotent(self, rates, query, kind):
        first = parse_query(self._params(query), kind, rates)
        serialized = canonical_query(first, kind)
        second = parse_query(self._params(serialized), kind, rates)
        assert second.request == first.request
        assert canonical_query(second, kind) == serialized


class TestStorageEndpoint:
    def test_literal_query_ordering(self, client):
        response = client.get(f"/api/cost/storage?{STORAGE_QUERY}")
        assert response.status_code == 200
        payload = parse_response_xml(response.text)
        rows = payload["rows"]
        assert rows[0]["provider_name"] == "SoftLayer"
        assert rows[0]["storage_dataTransfer_cost"] == 7
        totals = [row["storage_dataTransfer_cost"] for row in rows]
        assert totals == sorted(totals)

    def test_zero_usage_all_free(self, client):
        response = client.get(
            "/api/cost/storage?storage=0&data_upload_size=0&data_download_size=0"
        )
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert rows
        assert all(row["storage_dataTransfer_cost"] == 0 for row in rows)
        keys = [(row["provider_name"], row["region_name"]) for row in rows]
        assert keys == sorted(keys)

    def test_missing_storage_is_bad_request(self, client):
        response = client.get("/api/cost/storage?data_upload_size=1&data_download_size=1")
        assert response.status_code == 400
        assert "storage" in response.json()["error"]

    def test_negative_value_is_bad_request(self, client):
        response = client.get(
            "/api/cost/storage?storage=-5&data_upload_size=1&data_download_size=1"
        )
        assert response.status_code == 400

    def test_unknown_currency_is_bad_request(self, client):
        response = client.get(
            "/api/cost/storage?storage=5&data_upload_size=1&data_download_size=1&currency=WAT"
        )
        assert response.status_code == 400
        assert "unknown currency" in response.json()["error"]

    def test_json_and_xml_agree(self, client):
        query = STORAGE_QUERY.replace("media_type=xml", "media_type=json")
        as_json = client.get(f"/api/cost/storage?{query}").json()
        as_xml = parse_response_xml(client.get(f"/api/cost/storage?{STORAGE_QUERY}").text)
        for payload in (as_json, as_xml):
            payload["meta"]["duration_ms"] = None
            payload["meta"]["result_id"] = None
        assert as_json == as_xml


class TestCombinedEndpoint:
    def test_literal_query_parses_and_runs(self, client):
        response = client.get(f"/api/cost/combined?{COMBINED_QUERY}")
        assert response.status_code == 200

    def test_component_sums(self, client):
        response = client.get(
            "/api/cost/combined?currency=AUD&storage=10&data_upload_size=2"
            "&data_download_size=3&ram_range=0,69&storage_range=0,2040&n=1&precise=true"
        )
        payload = response.json()
        assert payload["meta"]["count"] == 28
        for row in payload["rows"]:
            parts = (
                D(row["storage_cost"])
                + D(row["requests_cost"])
                + D(row["data_transfer_cost"])
                + D(row["choices_compute_total_cost"])
            )
            assert parts == D(row["compute_storage_dataTransfer_cost"])

    def test_length_mismatch_is_bad_request(self, client):
        response = client.get(
            "/api/cost/combined?storage=10&data_upload_size=1&data_download_size=1"
            "&ram_range=0,69;1,4&n=1"
        )
        assert response.status_code == 400
        assert "match" in response.json()["error"]

    def test_malformed_range_is_bad_request(self, client):
        response = client.get(
            "/api/cost/combined?storage=10&data_upload_size=1&data_download_size=1"
            "&ram_range=69,0"
        )
        assert response.status_code == 400
        assert "low > high" in response.json()["error"]


class TestComputeEndpoint:
    def test_compute_only_rows(self, client):
        response = client.get(
            "/api/cost/compute?data_upload_size=1&data_download_size=1&ram_range=0,69"
        )
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert rows
        assert "storage_cost" not in rows[0]
        # providers without storage still sell compute
        assert any(row["provider_name"] == "Cloud Central" for row in rows)
        totals = [row["compute_dataTransfer_cost"] for row in rows]
        assert totals == sorted(totals)

    def test_missing_transfer_is_bad_request(self, client):
        response = client.get("/api/cost/compute?ram_range=0,69")
        assert response.status_code == 400
        assert "data_upload_size" in response.json()["error"]

    def test_unknown_provider_filter_is_empty_200(self, client):
        response = client.get(
            "/api/cost/compute?data_upload_size=1&data_download_size=1"
            "&ram_range=0,69&providers=NoSuchCloud"
        )
        assert response.status_code == 200
        assert response.json()["rows"] == []
        assert response.json()["meta"]["result_id"] is None


class TestRecommendationEndpoint:
    def test_read_back_verbatim(self, client):
        body = client.get(f"/api/cost/storage?{STORAGE_QUERY.replace('xml', 'json')}").json()
        result_id = body["meta"]["result_id"]
        detail = client.get(f"/api/recommendation/{result_id}")
        assert detail.status_code == 200
        rows = detail.json()["rows"]
        assert len(rows) == body["meta"]["count"]
        assert rows[0]["provider_name"] == "SoftLayer"
        assert D(rows[0]["total"]) == D("7.00000")
        assert rows[0]["storage_offering"] == "Object Storage"
        assert [row["rank"] for row in rows] == list(range(1, len(rows) + 1))

    def test_expired_id_is_404(self, catalog, rates):
        now = [0.0]
        store = ResultStore(ttl_seconds=60, clock=lambda: now[0])
        client = TestClient(create_app(catalog, rates, store=store))
        body = client.get(
            "/api/cost/storage?storage=1&data_upload_size=0&data_download_size=0"
        ).json()
        result_id = body["meta"]["result_id"]
        assert client.get(f"/api/recommendation/{result_id}").status_code == 200
        now[0] = 61.0
        assert client.get(f"/api/recommendation/{result_id}").status_code == 404

    def test_malformed_id_is_404(self, client):
        assert client.get("/api/recommendation/nope").status_code == 404


class TestStatelessness:
    def test_identical_queries_identical_bodies(self, client):
        query = "/api/cost/storage?storage=50&data_upload_size=50&data_download_size=10&currency=AUD"
        first = client.get(query).json()
        second = client.get(query).json()
        for payload in (first, second):
            payload["meta"]["duration_ms"] = None
            payload["meta"]["result_id"] = None
        assert first == second
