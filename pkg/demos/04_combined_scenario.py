"""
Combined compute + storage + transfer selection
===============================================

One compute instance with 0 < RAM <= 69 GB and local storage <= 2040 GB,
running the full 744-hour month, bundled with 10 GB of storage and a
little transfer. Bundles never mix providers or regions: transfer is
always included, and the total is the exact sum of the components.
"""

from decimal import Decimal as D

from cloudselect import (
    ComputeRequirement,
    SelectionRequest,
    UsageEstimate,
    load_bundled_catalog,
    load_bundled_rates,
    select,
)

catalog = load_bundled_catalog()
rates = load_bundled_rates()

requirement = ComputeRequirement(
    ram_range=(D(0), D(69)),
    local_storage_range=(D(0), D(2040)),
    hours=D(744),
    instance_count=1,
)
request = SelectionRequest(
    include_compute=True,
    include_storage=True,
    compute_requirements=(requirement,),
    usage=UsageEstimate(
        storage_gb=D(10),
        transfer_in_gb=D(2),
        transfer_out_gb=D(3),
    ),
    currency="AUD",
)

rows = select(request, catalog, rates)
print(f"{len(rows)} candidate bundles; the ten cheapest:")
print(f"{'provider':20s} {'region':26s} {'instance':18s} "
      f"{'storage':>8s} {'transfer':>8s} {'compute':>9s} {'total':>9s}")
for rec in rows[:10]:
    b = rec.breakdown
    (instance,) = rec.compute_offerings
    print(f"{rec.provider_name:20s} {rec.region_name:26s} {instance.name:18s} "
          f"{b.storage_cost:8.3f} {b.data_transfer_cost:8.3f} "
          f"{b.compute_total_cost:9.3f} {b.total:9.3f}")

# Multiple requirement slots enumerate every same-region combination:
# two slots with different RAM bands pick one instance per slot.
two_slots = SelectionRequest(
    include_compute=True,
    include_storage=False,
    compute_requirements=(
        ComputeRequirement(ram_range=(D(0), D(2)), hours=D(744)),
        ComputeRequirement(ram_range=(D(2), D(8)), hours=D(100), instance_count=2),
    ),
    usage=UsageEstimate(transfer_in_gb=D(1), transfer_out_gb=D(1)),
)
print()
print("Two requirement slots, compute-only; cheapest five pairings:")
for rec in select(two_slots, catalog, rates)[:5]:
    names = " + ".join(c.name for c in rec.compute_offerings)
    print(f"  {rec.provider_name:20s} {names:40s} {rec.breakdown.total:9.3f} USD")
