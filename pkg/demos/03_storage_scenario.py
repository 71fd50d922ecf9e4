"""
Storage-and-transfer selection scenario
=======================================

An analyst wants the cheapest place to park 50 GB for a month, counting
1000 COPY and 5000 GET requests, 50 GB uploaded and 10 GB downloaded,
with results in AUD. Same question, three surfaces: library, CLI, API.
"""

from decimal import Decimal as D

from cloudselect import (
    SelectionRequest,
    UsageEstimate,
    load_bundled_catalog,
    load_bundled_rates,
    select,
    validate_request,
)

catalog = load_bundled_catalog()
rates = load_bundled_rates()

request = SelectionRequest(
    include_compute=False,
    include_storage=True,
    usage=UsageEstimate(
        storage_gb=D(50),
        duration_days=D(31),
        request_counts={"COPY": 1000, "GET": 5000},
        transfer_in_gb=D(50),
        transfer_out_gb=D(10),
    ),
    currency="AUD",
)
problems = validate_request(request, rates)
assert not problems, problems

print(f"{'provider':20s} {'region':26s} {'storage':>8s} {'requests':>9s} "
      f"{'in':>6s} {'out':>6s} {'total':>8s}")
for rec in select(request, catalog, rates):
    b = rec.breakdown
    print(f"{rec.provider_name:20s} {rec.region_name:26s} "
          f"{b.storage_cost:8.3f} {b.requests_cost:9.3f} "
          f"{rec.data_in_cost:6.3f} {rec.data_out_cost:6.3f} {b.total:8.3f}")

print()
print("The same rows via the CLI:")
print("  cloudselect select --currency AUD --storage 50 --duration 31 \\")
print("      --data-upload-size 50 --data-download-size 10 --copy 1000 --get 5000")
print()
print("And via the REST API once served (cloudselect serve):")
print("  GET /api/cost/storage?media_type=xml&currency=AUD&storage=50&duration=31"
      "&data_upload_size=50&data_download_size=10&copy=1000&get=5000")
