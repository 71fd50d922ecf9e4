"""
The cost calculus, piece by piece
=================================

Graduated tiers, 31-day month proration, RAM-hour billing, request
fees, prepaid plans and currency conversion -- each is a pure function
you can poke at directly.
"""

from decimal import Decimal as D

from cloudselect import (
    ChargeStatus,
    ComputeBilling,
    PlanPricing,
    PlanType,
    RateTable,
    RequestOp,
    RequestPricing,
    StorageOffering,
    Tier,
    TierSchedule,
    compute_cost,
    convert_currency,
    plan_cost,
    requests_cost,
    storage_cost,
    tiered_cost,
)

# Graduated tiers: the first band's rate covers the first 1024 GB, the
# next band covers the rest. 1536 GB = 1024 * 0.125 + 512 * 0.093.
schedule = TierSchedule(tiers=(
    Tier(upto=D(1024), rate=D("0.125")),
    Tier(upto=D(51200), rate=D("0.093")),
))
print("50 GB costs   ", tiered_cost(schedule, D(50)))
print("1536 GB costs ", tiered_cost(schedule, D(1536)))

# A month is fixed at 31 days, so proration is linear: storing twice the
# data for half the month costs exactly the same.
flat = StorageOffering(
    name="demo", min_gb=D(0), max_gb=None,
    gb_month_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D("0.14")),)),
)
print()
print("10 GB for 31 days:", storage_cost(flat, D(10), D(31)))
print(" 2 GB for 15.5 d :", storage_cost(flat, D(2), D("15.5")))
print(" 1 GB for 31 days:", storage_cost(flat, D(1), D(31)))

# RAM-hour billing: a 2 GB server running one hour consumes 2 RAM-hours.
ram_billed = ComputeBilling(per_ram_gb_hour=D("0.10"))
print()
print("1 GB x 1 h:", compute_cost(ram_billed, D(1), 1, D(1)))
print("2 GB x 1 h:", compute_cost(ram_billed, D(2), 1, D(1)))
# Instance-hour billing for a full 744-hour month:
print("0.05/h x 744 h:", compute_cost(ComputeBilling(per_instance_hour=D("0.05")), D(1), 1, D(744)))

# Request fees match the most specific entry first, then ANY; free and
# unspecified entries cost nothing.
priced = StorageOffering(
    name="demo", min_gb=D(0), max_gb=None,
    gb_month_tiers=TierSchedule(),
    requests=(
        RequestPricing(operations=frozenset({RequestOp.DELETE}), rate_per_10k=D(0),
                       charged=ChargeStatus.FREE),
        RequestPricing(operations=frozenset({RequestOp.ANY}), rate_per_10k=D("0.01")),
    ),
)
print()
print("1000 COPY + 5000 GET at 0.01/10k:",
      requests_cost(priced, {"COPY": 1000, "GET": 5000}))
print("a million free DELETEs:", requests_cost(priced, {"DELETE": 10**6}))

# Prepaid plans bill whole periods plus overage beyond included units.
plan = PlanPricing(plan_type=PlanType.PERIOD, per_period_cost=D(10),
                   period_length_days=31, included_units=D(100), overage_rate=D("0.5"))
print()
print("50 units, one period: ", plan_cost(plan, D(50), D(31)))
print("150 units, one period:", plan_cost(plan, D(150), D(31)))

# Conversion is plain multiplication against a USD-based rate table, so
# it distributes over sums: convert components or totals, same answer.
rates = RateTable(rates={"USD": D(1), "AUD": D("1.25")})
print()
print("10 USD in AUD:", convert_currency(D(10), "AUD", rates))
