"""
Touring the normalized catalog
==============================

Every provider quotes prices differently: instance-hours here, RAM-hours
there, flat per-transaction fees, regional price sheets. The catalog
flattens all of it into providers -> regions -> typed offerings.
"""

from cloudselect import (
    MemoryUnit,
    ServiceType,
    list_offerings,
    load_bundled_catalog,
    normalize_memory,
)
from decimal import Decimal

# The raw form keeps every region separate, even when two regions share
# identical price sheets.
catalog = load_bundled_catalog(merge_regions=False)
print(f"{len(catalog.providers)} providers in the bundled catalog:")
for provider in catalog.providers:
    regions = ", ".join(r.name for r in provider.regions)
    print(f"  {provider.name:20s} regions: {regions}")

# Memory figures arrive in whatever unit the provider publishes.
# Normalization fixes 1 GB = 1024 MB and rounds conversions to 3 places.
print()
print("613 MB normalizes to", normalize_memory(Decimal(613), MemoryUnit.MB), "GB")

# Offerings are searchable with regular expressions, optionally narrowed
# to a provider list.
print()
print("Compute offerings matching '^m1':")
for row in list_offerings(catalog, ServiceType.COMPUTE, name_pattern="^m1"):
    o = row.offering
    print(f"  {row.provider} / {row.region}: {o.name} "
          f"({o.cores} cores, {o.ram_gb} GB RAM, {o.local_storage_gb} GB local)")

# Merging collapses equal-price regions into one row with a joined name.
merged = load_bundled_catalog(merge_regions=True)
azure = merged.provider("Windows Azure")
print()
print("Azure regions after merging equal price sheets:")
for region in azure.regions:
    print(f"  {region.name} (location: {region.location.value})")
