"""Operator command line: validate catalogs, run selections offline, serve the API.

Exit codes: 0 success, 1 validation failure (catalog invariants, bad
request values), 2 IO or usage errors (missing files, malformed flags).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .api import QueryError, create_app, run_cost_query
from .catalog import (
    Catalog,
    CatalogError,
    ServiceType,
    load_catalog,
    merge_catalog_regions,
)
from .fixtures import bundled_catalog_text, bundled_rates_text
from .pricing import RateTable, load_rates
from .selection import offer_count

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

CATALOG_ENV = "CLOUDSELECT_CATALOG"
RATES_ENV = "CLOUDSELECT_RATES"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogError as exc:
        print(f"invalid catalog: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cloudselect",
        description="Cost-ranked selection of cloud compute/storage/network bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="check a catalog file against all invariants")
    validate.add_argument("catalog", help="path to a catalog JSON file")
    validate.set_defaults(handler=cmd_validate)

    count = sub.add_parser("offer-count", help="report the size of the selection space")
    count.add_argument("catalog", nargs="?", help="catalog path (default: bundled fixture)")
    count.set_defaults(handler=cmd_offer_count)

    sel = sub.add_parser("select", help="run a cost query offline")
    _add_data_flags(sel)
    sel.add_argument("--storage", help="stored GB per month (enables storage selection)")
    sel.add_argument("--duration", help="usage duration in days (default 31)")
    sel.add_argument("--data-upload-size", "--in", dest="data_upload_size",
                     required=True, help="inbound transfer GB")
    sel.add_argument("--data-download-size", "--out", dest="data_download_size",
                     required=True, help="outbound transfer GB")
    for op in ("copy", "get", "put", "post", "list", "delete", "search", "head"):
        sel.add_argument(f"--{op}", help=f"number of {op.upper()} requests")
    sel.add_argument("--ram-range", help='compute RAM bounds "low,high;low,high"')
    sel.add_argument("--storage-range", help='compute local-storage bounds "low,high;..."')
    sel.add_argument("--hour", help="compute hours, comma separated per requirement")
    sel.add_argument("--month", help="compute months, comma separated per requirement")
    sel.add_argument("--n", help="instance counts, comma separated per requirement")
    sel.add_argument("--currency", default="USD")
    sel.add_argument("--providers", help="comma-separated provider names to consider")
    sel.add_argument("--limit", help="maximum number of rows")
    sel.add_argument("--precise", action="store_true", help="print full-precision decimals")
    sel.add_argument("--format", choices=("table", "json"), default="table")
    sel.add_argument("--round-digits", type=int, default=3)
    sel.set_defaults(handler=cmd_select)

    serve = sub.add_parser("serve", help="serve the REST API")
    _add_data_flags(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--round-digits", type=int, default=3)
    serve.add_argument("--ttl-seconds", type=float, default=1800.0,
                       help="result store retention")
    serve.add_argument("--ui-dir", help="also serve a built web UI from this directory")
    serve.set_defaults(handler=cmd_serve)

    return parser


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--catalog",
        default=os.environ.get(CATALOG_ENV),
        help=f"catalog path (default: ${CATALOG_ENV} or the bundled fixture)",
    )
    parser.add_argument(
        "--rates",
        default=os.environ.get(RATES_ENV),
        help=f"rates path (default: ${RATES_ENV} or the bundled fixture)",
    )
    parser.add_argument(
        "--merge-regions",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="merge equal-price regions at load (default: on)",
    )


def _load_catalog_arg(path: Optional[str], merge: bool) -> Catalog:
    text = Path(path).read_text("utf-8") if path else bundled_catalog_text()
    catalog = load_catalog(text)
    return merge_catalog_regions(catalog) if merge else catalog


def _load_rates_arg(path: Optional[str]) -> RateTable:
    text = Path(path).read_text("utf-8") if path else bundled_rates_text()
    return load_rates(text)


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        catalog = load_catalog(Path(args.catalog).read_text("utf-8"))
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogError as exc:
        print(f"invalid catalog: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    offerings = sum(
        len(region.offerings(service_type))
        for provider in catalog.providers
        for region in provider.regions
        for service_type in ServiceType
    )
    print(f"ok: {len(catalog.providers)} providers, {offerings} offerings, "
          f"version {catalog.version}")
    return EXIT_OK


def cmd_offer_count(args: argparse.Namespace) -> int:
    catalog = _load_catalog_arg(args.catalog, merge=False)
    report = offer_count(catalog)
    rows = [
        {"provider": name, "simple": str(entry.simple), "detailed": str(entry.detailed)}
        for name, entry in report.per_provider.items()
    ]
    rows.append({"provider": "TOTAL", "simple": str(report.simple_count),
                 "detailed": str(report.detailed_count)})
    print(format_table(rows))
    return EXIT_OK


def cmd_select(args: argparse.Namespace) -> int:
    catalog = _load_catalog_arg(args.catalog, args.merge_regions)
    rates = _load_rates_arg(args.rates)

    params = {}
    for flag, param in (
        ("storage", "storage"), ("duration", "duration"),
        ("data_upload_size", "data_upload_size"),
        ("data_download_size", "data_download_size"),
        ("copy", "copy"), ("get", "get"), ("put", "put"), ("post", "post"),
        ("list", "list"), ("delete", "delete"), ("search", "search"), ("head", "head"),
        ("ram_range", "ram_range"), ("storage_range", "storage_range"),
        ("hour", "hour"), ("month", "month"), ("n", "n"),
        ("currency", "currency"), ("providers", "providers"), ("limit", "limit"),
    ):
        value = getattr(args, flag)
        if value is not None:
            params[param] = value
    if args.precise:
        params["precise"] = "true"

    has_compute = any(
        getattr(args, flag) is not None
        for flag in ("ram_range", "storage_range", "hour", "month", "n")
    )
    has_storage = args.storage is not None
    if has_storage and has_compute:
        kind = "combined"
    elif has_storage:
        kind = "storage"
    elif has_compute:
        kind = "compute"
    else:
        print("usage error: provide --storage and/or compute flags (--ram-range ...)",
              file=sys.stderr)
        return EXIT_USAGE

    try:
        payload, _ = run_cost_query(
            params, kind, catalog, rates, store=None, round_digits=args.round_digits
        )
    except QueryError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "json":
        print(json.dumps(payload, separators=(",", ":")))
    else:
        rows = [{k: str(v) for k, v in row.items()} for row in payload["rows"]]
        print(format_table(rows))
        meta = payload["meta"]
        print(f"fetched {meta['count']} records in {meta['duration_ms']} ms "
              f"({meta['currency']})")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .selection import ResultStore

    catalog = _load_catalog_arg(args.catalog, args.merge_regions)
    rates = _load_rates_arg(args.rates)
    app = create_app(
        catalog, rates,
        store=ResultStore(ttl_seconds=args.ttl_seconds),
        round_digits=args.round_digits,
    )
    if args.ui_dir:
        from starlette.staticfiles import StaticFiles

        if not Path(args.ui_dir).is_dir():
            print(f"error: --ui-dir {args.ui_dir} is not a directory", file=sys.stderr)
            return EXIT_USAGE
        app.mount("/", StaticFiles(directory=args.ui_dir, html=True), name="ui")
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    except (OSError, SystemExit) as exc:
        print(f"serve failed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def format_table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)"
    headers = list(rows[0].keys())
    widths = {h: max(len(h), *(len(str(r.get(h, ""))) for r in rows)) for h in headers}
    lines = [
        "  ".join(h.ljust(widths[h]) for h in headers),
        "  ".join("-" * widths[h] for h in headers),
    ]
    for row in rows:
        lines.append("  ".join(str(row.get(h, "")).ljust(widths[h]) for h in headers))
    return "\n".join(lines)


if __name__ == "__main__":
    sys.exit(main())
