"""REST service for cost estimation and selection.

Three GET endpoints price storage-only, compute-only and combined
bundles; a fourth returns the full per-component breakdown of an earlier
result by id.  Responses render as JSON (default) or XML from the same
payload, so the two forms are field-for-field equal.  Unknown query
parameters are ignored; value errors come back as HTTP 400 with a
message naming the parameter.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation, ROUND_HALF_UP
from typing import Mapping, Optional
from urllib.parse import urlencode
from xml.etree import ElementTree

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .catalog import Catalog
from .pricing import RateTable, UsageEstimate
from .selection import (
    InvalidRequestError,
    Recommendation,
    ResultNotFoundError,
    ResultStore,
    SelectionRequest,
    build_requirements,
    select,
    validate_request,
)

COUNT_PARAMS = ("copy", "get", "put", "post", "list", "delete", "search", "head")

KINDS = ("storage", "compute", "combined")


class QueryError(ValueError):
    """Bad request parameter; rendered as HTTP 400."""


@dataclass(frozen=True)
class ApiQuery:
    """A cost query after parameter translation."""

    request: SelectionRequest
    media_type: str = "json"
    precise: bool = False


def parse_range_list(text: str) -> list[tuple[Decimal, Decimal]]:
    """Parse "low,high;low,high" pairs with decimal bounds."""
    if not text:
        raise QueryError("empty range list")
    pairs = []
    for segment in text.split(";"):
        parts = segment.split(",")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise QueryError(f"malformed range {segment!r}; expected low,high")
        low, high = (_parse_decimal(part, f"range {segment!r}") for part in parts)
        if low > high:
            raise QueryError(f"range {segment!r} has low > high")
        pairs.append((low, high))
    return pairs


def parse_query(params: Mapping[str, str], kind: str, rates: RateTable) -> ApiQuery:
    """Translate raw query parameters into a validated SelectionRequest."""
    if kind not in KINDS:
        raise ValueError(f"unknown query kind {kind!r}")
    media_type = params.get("media_type", "json")
    if media_type not in ("json", "xml"):
        raise QueryError("media_type must be json or xml")
    precise = params.get("precise", "").lower() in ("1", "true", "yes")
    currency = params.get("currency", "USD")

    include_storage = kind in ("storage", "combined")
    include_compute = kind in ("compute", "combined")

    storage_gb = None
    if include_storage:
        raw = params.get("storage")
        if raw is None:
            raise QueryError("storage parameter missing or invalid")
        storage_gb = _parse_decimal(raw, "storage", minimum=0)

    duration = _parse_decimal(params.get("duration", "31"), "duration")
    if duration <= 0:
        raise QueryError("duration must be positive")

    upload = params.get("data_upload_size")
    download = params.get("data_download_size")
    if upload is None or download is None:
        raise QueryError("data_upload_size and data_download_size are required")
    transfer_in = _parse_decimal(upload, "data_upload_size", minimum=0)
    transfer_out = _parse_decimal(download, "data_download_size", minimum=0)

    counts = {}
    for name in COUNT_PARAMS:
        raw = params.get(name)
        if raw is None:
            continue
        counts[name.upper()] = _parse_int(raw, name, minimum=0)

    requirements = ()
    if include_compute:
        try:
            requirements = build_requirements(
                ram_ranges=_maybe(parse_range_list, params.get("ram_range")),
                local_storage_ranges=_maybe(parse_range_list, params.get("storage_range")),
                hours=_maybe(_parse_decimal_list, params.get("hour")),
                months=_maybe(_parse_decimal_list, params.get("month")),
                instance_counts=_maybe(_parse_int_list, params.get("n")),
            )
        except InvalidRequestError as exc:
            raise QueryError(str(exc)) from None

    providers = None
    if params.get("providers"):
        providers = tuple(
            name.strip() for name in params["providers"].split(",") if name.strip()
        )

    limit = None
    if params.get("limit") is not None:
        limit = _parse_int(params["limit"], "limit", minimum=1)

    request = SelectionRequest(
        include_compute=include_compute,
        include_storage=include_storage,
        compute_requirements=requirements,
        usage=UsageEstimate(
            storage_gb=storage_gb,
            duration_days=duration,
            request_counts=counts,
            transfer_in_gb=transfer_in,
            transfer_out_gb=transfer_out,
        ),
        provider_filter=providers,
        currency=currency,
        limit=limit,
    )
    problems = validate_request(request, rates)
    if problems:
        raise QueryError("; ".join(problems))
    return ApiQuery(request=request, media_type=media_type, precise=precise)


def canonical_query(query: ApiQuery, kind: str) -> str:
    """Serialize a parsed query back into its query-string grammar.

    parse_query(canonical_query(q)) reconstructs the same request.
    """
    request = query.request
    usage = request.usage
    params: dict[str, str] = {"media_type": query.media_type, "currency": request.currency}
    if request.include_storage:
        params["storage"] = _fmt(usage.storage_gb)
    params["duration"] = _fmt(usage.duration_days)
    params["data_upload_size"] = _fmt(usage.transfer_in_gb)
    params["data_download_size"] = _fmt(usage.transfer_out_gb)
    for name in COUNT_PARAMS:
        count = usage.request_counts.get(name.upper())
        if count is not None:
            params[name] = str(count)
    if request.include_compute:
        reqs = request.compute_requirements
        params["ram_range"] = ";".join(
            f"{_fmt(low)},{_fmt(high)}" for low, high in (r.ram_range for r in reqs)
        )
        params["storage_range"] = ";".join(
            f"{_fmt(low)},{_fmt(high)}"
            for low, high in (r.local_storage_range for r in reqs)
        )
        if any(r.months is not None for r in reqs):
            params["month"] = ",".join(_fmt(r.months) for r in reqs)
        else:
            params["hour"] = ",".join(_fmt(r.hours) for r in reqs)
        params["n"] = ",".join(str(r.instance_count) for r in reqs)
    if request.provider_filter is not None:
        params["providers"] = ",".join(request.provider_filter)
    if request.limit is not None:
        params["limit"] = str(request.limit)
    if query.precise:
        params["precise"] = "true"
    return urlencode(params)


def request_fingerprint(request: SelectionRequest) -> dict:
    """Canonical JSON-able form of a request, for contract comparisons."""
    usage = request.usage
    return {
        "include_compute": request.include_compute,
        "include_storage": request.include_storage,
        "currency": request.currency,
        "storage_gb": _fmt(usage.storage_gb) if usage.storage_gb is not None else None,
        "duration_days": _fmt(usage.duration_days),
        "transfer_in_gb": _fmt(usage.transfer_in_gb),
        "transfer_out_gb": _fmt(usage.transfer_out_gb),
        "request_counts": {op: count for op, count in sorted(usage.request_counts.items())},
        "requirements": [
            {
                "ram_range": [_fmt(r.ram_range[0]), _fmt(r.ram_range[1])],
                "local_storage_range": [
                    _fmt(r.local_storage_range[0]),
                    _fmt(r.local_storage_range[1]),
                ],
                "hours": _fmt(r.effective_hours),
                "instance_count": r.instance_count,
            }
            for r in request.compute_requirements
        ],
        "providers": list(request.provider_filter) if request.provider_filter else None,
        "limit": request.limit,
    }


# ---------------------------------------------------------------------------
# Response rendering

TOTAL_COLUMN = {
    "storage": "storage_dataTransfer_cost",
    "combined": "compute_storage_dataTransfer_cost",
    "compute": "compute_dataTransfer_cost",
}


def result_rows(
    recommendations: list[Recommendation], kind: str, round_digits: int, precise: bool
) -> list[dict]:
    rows = []
    for rec in recommendations:
        b = rec.breakdown
        row: dict = {"provider_name": rec.provider_name, "region_name": rec.region_name}
        if kind == "storage":
            row["storage_cost"] = _render(b.storage_cost, round_digits, precise)
            row["requests_cost"] = _render(b.requests_cost, round_digits, precise)
            row["cost_data_in"] = _render(rec.data_in_cost, round_digits, precise)
            row["cost_data_out"] = _render(rec.data_out_cost, round_digits, precise)
        else:
            if kind == "combined":
                row["storage_cost"] = _render(b.storage_cost, round_digits, precise)
            row["requests_cost"] = _render(b.requests_cost, round_digits, precise)
            row["data_transfer_cost"] = _render(b.data_transfer_cost, round_digits, precise)
            row["choices_compute_total_cost"] = _render(
                b.compute_total_cost, round_digits, precise
            )
        row[TOTAL_COLUMN[kind]] = _render(b.total, round_digits, precise)
        rows.append(row)
    return rows


def detail_rows(recommendations: tuple[Recommendation, ...]) -> list[dict]:
    rows = []
    for rec in recommendations:
        b = rec.breakdown
        rows.append(
            {
                "rank": rec.rank,
                "provider_name": rec.provider_name,
                "region_name": rec.region_name,
                "currency": b.currency,
                "storage_offering": rec.storage_offering.name if rec.storage_offering else None,
                "compute_offerings": [c.name for c in rec.compute_offerings],
                "transfer_offering": rec.transfer_offering.name,
                "storage_cost": str(b.storage_cost),
                "requests_cost": str(b.requests_cost),
                "cost_data_in": str(rec.data_in_cost),
                "cost_data_out": str(rec.data_out_cost),
                "data_transfer_cost": str(b.data_transfer_cost),
                "compute_total_cost": str(b.compute_total_cost),
                "total": str(b.total),
            }
        )
    return rows


def render_xml(payload: dict) -> str:
    root = ElementTree.Element("response")
    _xml_append(root, payload)
    return ElementTree.tostring(root, encoding="unicode")


def _xml_append(parent: ElementTree.Element, value, key: Optional[str] = None) -> None:
    if isinstance(value, dict):
        node = parent if key is None else ElementTree.SubElement(parent, key)
        for child_key, child in value.items():
            _xml_append(node, child, child_key)
    elif isinstance(value, list):
        container = ElementTree.SubElement(parent, key)
        singular = {"rows": "row", "compute_offerings": "compute_offering"}.get(key, "item")
        for item in value:
            _xml_append(container, item, singular)
    else:
        node = ElementTree.SubElement(parent, key)
        if value is not None:
            node.text = value if isinstance(value, str) else json.dumps(value)


def _render(value: Decimal, round_digits: int, precise: bool):
    if precise:
        return str(value)
    quantized = value.quantize(Decimal(1).scaleb(-round_digits), rounding=ROUND_HALF_UP)
    return int(quantized) if quantized == quantized.to_integral_value() else float(quantized)


def _fmt(value) -> str:
    if value is None:
        return ""
    text = format(value, "f")
    return text.rstrip("0").rstrip(".") if "." in text else text


def _maybe(parser, raw: Optional[str]):
    return None if raw is None else parser(raw)


def _parse_decimal(raw: str, name: str, minimum: Optional[int] = None) -> Decimal:
    try:
        value = Decimal(raw)
    except InvalidOperation:
        raise QueryError(f"{name} must be a number, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise QueryError(f"{name} must be >= {minimum}")
    return value


def _parse_int(raw: str, name: str, minimum: Optional[int] = None) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise QueryError(f"{name} must be an integer, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise QueryError(f"{name} must be >= {minimum}")
    return value


def _parse_decimal_list(raw: str) -> list[Decimal]:
    return [_parse_decimal(part, "list value") for part in raw.split(",")]


def _parse_int_list(raw: str) -> list[int]:
    return [_parse_int(part, "list value") for part in raw.split(",")]


# ---------------------------------------------------------------------------
# Application

def run_cost_query(
    params: Mapping[str, str],
    kind: str,
    catalog: Catalog,
    rates: RateTable,
    store: Optional[ResultStore] = None,
    round_digits: int = 3,
) -> tuple[dict, str]:
    """Execute one cost query; returns (payload, media_type).

    Shared by the HTTP endpoints and the CLI so both produce identical
    bodies for identical parameters.
    """
    query = parse_query(params, kind, rates)
    started = time.perf_counter()
    recommendations = select(query.request, catalog, rates)
    duration_ms = round((time.perf_counter() - started) * 1000, 3)
    result_id = None
    if store is not None and recommendations:
        result_id = store.store(recommendations)
    payload = {
        "meta": {
            "count": len(recommendations),
            "duration_ms": duration_ms,
            "currency": query.request.currency,
            "result_id": result_id,
        },
        "rows": result_rows(recommendations, kind, round_digits, query.precise),
    }
    return payload, query.media_type


def create_app(
    catalog: Catalog,
    rates: RateTable,
    store: Optional[ResultStore] = None,
    round_digits: int = 3,
) -> FastAPI:
    """Build the service around one immutable catalog snapshot."""
    app = FastAPI(title="cloudselect", version="0.1.0")
    app.state.catalog = catalog
    app.state.rates = rates
    app.state.store = store if store is not None else ResultStore()
    app.state.round_digits = round_digits

    @app.exception_handler(QueryError)
    async def bad_request(_request: Request, exc: QueryError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(ResultNotFoundError)
    async def not_found(_request: Request, _exc: ResultNotFoundError):
        return JSONResponse(status_code=404, content={"error": "unknown or expired result id"})

    def respond(payload: dict, media_type: str) -> Response:
        if media_type == "xml":
            return Response(content=render_xml(payload), media_type="application/xml")
        return JSONResponse(content=payload)

    def cost_endpoint(kind: str):
        async def handler(request: Request) -> Response:
            payload, media_type = run_cost_query(
                dict(request.query_params),
                kind,
                app.state.catalog,
                app.state.rates,
                app.state.store,
                app.state.round_digits,
            )
            return respond(payload, media_type)

        return handler

    app.get("/api/cost/storage")(cost_endpoint("storage"))
    app.get("/api/cost/combined")(cost_endpoint("combined"))
    app.get("/api/cost/compute")(cost_endpoint("compute"))

    @app.get("/api/recommendation/{result_id}")
    async def recommendation(result_id: str, request: Request) -> Response:
        media_type = request.query_params.get("media_type", "json")
        if media_type not in ("json", "xml"):
            raise QueryError("media_type must be json or xml")
        stored = app.state.store.fetch(result_id)
        payload = {
            "meta": {"count": len(stored), "result_id": result_id},
            "rows": detail_rows(stored),
        }
        return respond(payload, media_type)

    return app
