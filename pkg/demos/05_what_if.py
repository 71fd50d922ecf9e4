"""
What-if exploration
===================

Rerunning the same request with a different currency, provider shortlist
or catalog edit is cheap: the catalog is an immutable snapshot and
selection is a pure function, so variants compare apples to apples.
"""

from decimal import Decimal as D

from cloudselect import (
    ComputeBilling,
    ComputeOffering,
    SelectionRequest,
    UsageEstimate,
    load_bundled_catalog,
    load_bundled_rates,
    offer_count,
    select,
    upsert_offering,
)

catalog = load_bundled_catalog()
rates = load_bundled_rates()

base = SelectionRequest(
    include_compute=False,
    include_storage=True,
    usage=UsageEstimate(storage_gb=D(50), transfer_in_gb=D(50), transfer_out_gb=D(10)),
)

# Currency never changes the ranking, only the printed numbers.
for currency in ("USD", "AUD", "EUR", "JPY"):
    request = SelectionRequest(
        include_compute=False, include_storage=True, usage=base.usage, currency=currency
    )
    top = select(request, catalog, rates)[0]
    print(f"cheapest in {currency}: {top.provider_name:12s} {top.breakdown.total:12.3f}")

# Shortlisting providers answers "what if we only consider these two?"
shortlist = SelectionRequest(
    include_compute=False, include_storage=True, usage=base.usage,
    provider_filter=("Amazon", "Windows Azure"),
)
print()
print("Amazon vs Azure only:")
for rec in select(shortlist, catalog, rates):
    print(f"  {rec.provider_name:15s} {rec.region_name:26s} {rec.breakdown.total:8.3f} USD")

# Catalog edits produce a new snapshot; the old one is untouched.
cheaper = ComputeOffering(
    name="promo.small", cores=1, speed_ghz=D("2.0"), ram_gb=D(2),
    local_storage_gb=D(50), billing=ComputeBilling(per_instance_hour=D("0.01")),
)
edited = upsert_offering(catalog, "SoftLayer", "Any", cheaper)
print()
print(f"catalog version {catalog.version!r} -> {edited.version!r} after an upsert")

# How big is the search space the engine walks?
report = offer_count(catalog)
print()
print(f"selection space: {report.simple_count} service combinations, "
      f"{report.detailed_count} tier-weighted offers across regions")
for name, entry in report.per_provider.items():
    print(f"  {name:20s} simple={entry.simple:3d} detailed={entry.detailed:3d}")
